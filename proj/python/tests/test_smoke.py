import pytest

import modtrace


def test_unimodularity_verdicts():
    assert modtrace.algebra("builder:group:S3:F2").is_unimodular()
    sw = modtrace.algebra("builder:sweedler:F3")
    assert not sw.is_unimodular()
    assert not sw.socle_is_trivial()


def test_ambi_both_methods_agree():
    u = modtrace.algebra("builder:usl2:p=3")
    v = modtrace.ambi(u.module("St"))
    assert v["direct"] is True
    assert v["structural"] is True
    assert v["j"] == v["jprime"]


def test_structural_absent_over_cyclotomic_field():
    q = modtrace.algebra("builder:quantum:l=3")
    v = modtrace.ambi(q.module("St"))
    assert v["direct"] is True
    assert v["structural"] is None
    assert v["structural_note"]


def test_regular_s3_decomposition():
    g = modtrace.algebra("builder:group:S3:F2")
    parts = modtrace.decompose(g.module("regular"))
    assert sorted(p["dim"] for p in parts) == [2, 2, 2]
    assert all(p["status"] == "indecomposable-certified" for p in parts)


def test_modified_dimension_and_categorical_trace():
    g = modtrace.algebra("builder:group:S3:F2")
    t = modtrace.TraceFunctional(g.module("N"))
    p1 = g.module("P1")
    assert t.dimension(p1) == "1"
    assert t.dimension(g.module("N")) == "1"
    assert modtrace.pivotal_trace_of_identity(p1) == "0"
    assert t.trace(p1, [[1, 0], [0, 1]]) == "1"


def test_errors_are_typed():
    u = modtrace.algebra("builder:usl2:p=3")
    t = modtrace.TraceFunctional(u.module("St"))
    with pytest.raises(modtrace.NoSplitting):
        t.dimension(u.module("trivial"))
    g = modtrace.algebra("builder:group:S3:F2")
    with pytest.raises(modtrace.NotAbsolutelySimple):
        modtrace.ambi(g.module("regular"))
    with pytest.raises(modtrace.MalformedInput):
        modtrace.algebra("builder:nonsense")


def test_json_round_trip(tmp_path):
    g = modtrace.algebra("builder:group:S3:F2")
    path = tmp_path / "s3.json"
    path.write_text(g.to_json())
    h = modtrace.algebra(str(path))
    assert h.dim == 6
    assert h.is_unimodular()
