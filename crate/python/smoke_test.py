"""Smoke test for the pybundlecalc extension.

Build and install first:
    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/pybundlecalc-*.whl
"""

import json

import pybundlecalc as bc


def main():
    assert bc.chi(0, 0) == -6
    assert bc.chi(-2, -4) == 2
    assert bc.cohom_table(-2, 0) == [0, 1, 0, 0, 0]
    assert bc.slope(1, 1, 1, 2) == 7
    assert bc.stability_of(1, 17) == "stable"
    assert bc.stability_of(1, 18) == "semistable_not_stable"
    assert bc.stability_of(1, 19) == "unstable"
    assert bc.heisenberg_structure() == (8, 2, [2, 2])

    lin = bc.Pencil.linear_normal_form(2, 1, 3)
    assert lin.degree == 1
    assert lin.generic_rank() == 2
    assert lin.rank_one_points() == 2
    assert lin.singular_line_constant()

    w = bc.Pencil.quartic_witness()
    assert w.degree == 4
    assert w.rank_one_points() == 4
    assert not w.singular_line_constant()
    assert w.rank_at(1, 0) == 2

    text = "degree 1\n" + "\n".join(["2*l + m", "l", "0", "0", "3*l + m", "0", "0", "0", "0", "0"])
    assert bc.Pencil.parse(text).generic_rank() == 2
    try:
        bc.Pencil.parse("degree x")
    except ValueError:
        pass
    else:
        raise AssertionError("bad pencil parsed")

    report = json.loads(bc.verify(["eq5", "prop2.2"]))
    assert report["summary"] == {"pass": 2, "fail": 0}
    assert len(bc.claim_ids()) == 25
    print("smoke test ok")


if __name__ == "__main__":
    main()
