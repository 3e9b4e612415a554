"""The built-in check battery: green by default, honest when tampered."""

from muxnet.verification import VerifyOptions, run_verification


def fast_options(**overrides):
    opts = VerifyOptions(
        joint_trials=6,
        gl_chi2_samples=600,
        oracle_b_per_shape=2,
        oracle_l_samples=4,
        guarantee_l_trials=10,
    )
    for key, val in overrides.items():
        setattr(opts, key, val)
    return opts


def test_default_battery_all_hold():
    rows = run_verification(fast_options())
    assert rows, "battery produced no checks"
    failing = [r.check for r in rows if not r.holds]
    assert failing == []


def test_battery_covers_every_module():
    names = {r.check for r in run_verification(fast_options())}
    expected = {
        "field_axioms",
        "field_inverse_exhaustive",
        "matrix_rank_nullity",
        "matrix_inverse_roundtrip",
        "gl_sampler_chi2",
        "two_universal_bound",
        "two_universal_pinned",
        "encode_bijection",
        "decode_roundtrip",
        "encode_linearity",
        "butterfly_bottleneck",
        "butterfly_decodable",
        "eavesdrop_block_structure",
        "eavesdrop_rank_bound",
        "oracle_equivalence",
        "leakage_quantized",
        "leakage_floor",
        "leakage_monotone_rows",
        "leakage_data_processing",
        "hash_bound_pinned",
        "hash_bounds_random",
        "projection_family_two_universal",
        "projection_extracts",
        "decodability_invariant",
        "coding_deterministic",
        "rho_argmin_mean_bound",
        "rho_argmin_per_slot_bound",
        "guarantee_fraction",
        "certify_monotone",
        "report_determinism",
        "report_rows_bounded",
        "capacity_membership",
    }
    assert expected <= names


def test_tampered_tolerance_fails_named_checks():
    rows = run_verification(fast_options(tolerance=-1.0))
    failing = {r.check for r in rows if not r.holds}
    assert "hash_bound_pinned" in failing or "hash_bounds_random" in failing


def test_battery_is_deterministic():
    r1 = [(r.check, r.lhs, r.rhs, r.holds) for r in run_verification(fast_options())]
    r2 = [(r.check, r.lhs, r.rhs, r.holds) for r in run_verification(fast_options())]
    assert r1 == r2
