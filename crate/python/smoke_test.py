"""Smoke test for the pbf extension module.

Build and install first, e.g.

    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/pbf-*.whl
"""

import json
from fractions import Fraction

import pbf


def main():
    f = pbf.Table([1, 2, 4, 3])
    assert f.arity == 2
    assert f.values == [1, 2, 4, 3]
    assert f.polynomial() == "1 + x1 + 3*x2 - 2*x1*x2"
    assert f.apply("v2 ^1") == pbf.Table([3, 3, 3, 3])
    assert f.apply("^2 v1") == pbf.Table([2, 2, 2, 2])
    assert f.local_monotonicity_degree() == 1
    assert f.has_p_permutable_derivatives(2)
    assert f.permutability_degree() == 2

    g = pbf.Table.from_expr("x1 - x1*x2 + x2*x3")
    assert g.delta(2) == pbf.Table.from_expr("x3 - x1", arity=3)
    assert g.local_monotonicity_degree() == 2
    assert g.decompose() is None

    h = pbf.Table([0.25, "1/2", Fraction(3, 4), 1])
    assert h[1] == Fraction(1, 2)
    assert json.loads(h.decompose())["max"] == "1"

    seq = pbf.staircase(3)
    s = pbf.Table.from_sequence(seq)
    assert s.local_monotonicity_degree() == 3
    assert s.permutability_degree() == 3
    assert s.symmetric_sequence() == seq

    parity = pbf.Table.from_sequence([0, 1, 0, 1])
    assert json.loads(parity.reconstruct_from_profile())["kind"] == "parity-pair"
    assert json.loads(pbf.Table([5, 5]).analyze())["monotone"]

    try:
        pbf.Table.from_expr("x1 +")
    except ValueError as e:
        assert "position" in str(e)
    else:
        raise AssertionError("expected a parse error")

    results = json.loads(pbf.sweep(["binary-nonmonotone-census"], max_arity=2, samples=0))
    assert results[0]["passed"] == 16

    print("python smoke test passed")


if __name__ == "__main__":
    main()
