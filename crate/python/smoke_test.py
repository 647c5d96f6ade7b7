"""Smoke test for the mscalg extension module.

Build and run:
    maturin develop -m crates/py/Cargo.toml --release && python python/smoke_test.py
or copy target/release/libmscalg.so to mscalg.so on PYTHONPATH.
"""

import mscalg


def main():
    s0 = mscalg.Msc([[0, 0, 1, 0], [0, 0, 1, 0]], "Q")
    assert s0.n == 2 and s0.field == "Q"
    der = s0.derivations()
    assert der["trivial"] and der["dim"] == 0
    simple = s0.simplicity()
    assert simple["status"] == "NotSimple"
    assert simple["certificate"] == [["1", "1"]]
    assert s0.multiply([1, 1], ["1/2", 0]) == ["1/2", "1/2"]

    again = mscalg.Msc.from_json(s0.to_json())
    assert again == s0

    e2 = mscalg.Msc.diagonal_idempotent(2, "GF3")
    assert e2.is_automorphism([[0, 1], [1, 0]])
    aut = e2.automorphisms()
    assert aut["method"] == "Exhaustive" and aut["order"] == 2

    g = [[1, 1], [0, 1]]
    b = e2.change_basis(g)
    assert e2.isomorphism(b) is not None

    seed = mscalg.Msc.seed2([1, 0, 2, 3], "GF5")
    assert seed.is_trivial_der()
    assert seed.automorphisms()["status"] == "Trivial"

    stages = mscalg.construct([0, 0, 0, 1], "GF5", 3, seed=5, mode="simple")
    assert [s["n"] for s in stages] == [2, 3]
    top = stages[-1]["algebra"]
    assert top.simplicity()["status"] == "Simple"
    assert top.is_trivial_der()

    report = mscalg.audit("GF3", "trivaut")
    assert report["sound"] and report["complete"] and report["unique"]

    d = mscalg.density("GF2")
    assert d["counts"]["total"] == 256
    d1 = mscalg.density("GF7", samples=300, seed=9)
    assert d1 == mscalg.density("GF7", samples=300, seed=9)

    inc = mscalg.inclusion("GF5", samples=2000, seed=1)
    assert inc["aut_not_der_count"] == 0

    try:
        e2.isomorphism(b, budget=1)
    except mscalg.BudgetExceeded:
        pass
    else:
        raise AssertionError("expected BudgetExceeded")

    try:
        mscalg.Msc([[1, 2, 3]], "GF4")
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    print("mscalg smoke test: ok")


if __name__ == "__main__":
    main()
