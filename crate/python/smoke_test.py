"""Smoke test for the `hypertoric` extension module.

Build and install first, e.g. `pip install ./crates/python --no-build-isolation`
or `maturin develop -m crates/python/Cargo.toml`.
"""

import hypertoric


def main():
    bmu3 = hypertoric.Model.direct([[0, 1, 2, 3]], [[4]])
    ring = bmu3.chow_ring(3)
    assert ring["relations"] == ["3*t1"], ring
    assert ring["graded"]["1"] == "Z/3", ring
    assert [c["v"] for c in bmu3.inertia()] == [["0"], ["1/3"], ["2/3"]]
    assert bmu3.star(["1/3"], ["2/3"], 4) == (["0"], "2*t1^2")
    assert bmu3.star(["1/3"], ["1/3"], 4) == (["2/3"], "2*t1")
    assert bmu3.check_star_laws(4)["pass"]

    tp12 = hypertoric.Model.from_json('{"A": [[1,2]], "theta": [1], "kind": "hypertoric"}')
    table = tp12.orbifold_table(5)
    half = [p for p in table["products"] if p["g1"] == ["1/2"] and p["g2"] == ["1/2"]]
    assert half[0]["poly"] == "t1^2" and half[0]["raw"] == "-t1^2", half

    assert hypertoric.verify_obstruction_pullback([[1, 2]], [1])["pass"]
    assert hypertoric.verify_orbifold_iso([[1, 1]], [1], 4)["pass"]
    assert hypertoric.verify_charts([[1, 2]], [1], samples=20, seed=3)["pass"]
    assert not hypertoric.sre_condition_iii([["1/2"]], [[-1], [-1]])
    assert hypertoric.check_generic([[1, 0, 1], [0, 1, 1]], [1, 0]) == ([1, 3], 3)

    u, d, v = hypertoric.snf([[2, 0], [0, 3]])
    assert d == [[1, 0], [0, 6]], d

    try:
        hypertoric.Model.hypertoric([[1, 0, 1], [0, 1, 1]], [1, 0])
    except ValueError as e:
        assert "non-generic: basis {1,3}" in str(e)
    else:
        raise AssertionError("non-generic model accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
