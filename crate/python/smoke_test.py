"""Smoke test for the Python extension.

Build first:
    cargo build -p partial-galois-py --release --features extension-module
then run:
    python3 python/smoke_test.py
"""

import importlib.util
import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    for profile in ("release", "debug"):
        for name in ("libpartial_galois_py.so", "libpartial_galois_py.dylib", "partial_galois_py.dll"):
            lib = ROOT / "target" / profile / name
            if lib.exists():
                suffix = ".pyd" if name.endswith(".dll") else ".so"
                tmp = pathlib.Path(tempfile.mkdtemp()) / ("partial_galois" + suffix)
                shutil.copy(lib, tmp)
                spec = importlib.util.spec_from_file_location("partial_galois", tmp)
                mod = importlib.util.module_from_spec(spec)
                spec.loader.exec_module(mod)
                return mod
    sys.exit("extension not built; see the module docstring")


def main():
    pg = load()

    r = pg.Ring([3, 3])
    assert len(r) == 2 and r.cardinality() == "9"
    assert len(r.idempotents()) == 4
    assert r.unit_group() == ["2", "2"]
    assert r.mul([2, 2], [2, 1]) == [1, 2]

    a = pg.PartialAction.fix_a()
    assert a.validate() == []
    assert a.is_galois()
    assert a.cohomology(0) == ["2"]
    assert a.cohomology(1) == [] and a.cohomology(2) == []
    assert a.pics_fixed() == [[0, 0], [1, 1]]
    assert a.apply(1, [1, 2]) == [2, 1]

    b = pg.PartialAction.fix_b()
    assert b.one(1) == [0, 1, 1]
    assert b.invariant_order() == "3"
    cp = b.crossed_product()
    assert cp.order() == "19683"
    assert cp.associativity_witness() is None
    assert cp.center_order() == "3"
    assert not pg.PartialAction.non_galois().is_galois()

    bad = pg.PartialAction.from_toml((ROOT / "fixtures" / "fixA_bad_twist.toml").read_text())
    assert "twist (v)" in bad.validate()
    witness = bad.crossed_product().associativity_witness()
    assert witness.startswith("(g1,g1,g1)"), witness
    assert bad.gencross() == (False, False)

    report = json.loads(a.sequence_report(seed=3))
    assert report["passed"] and report["schema_version"] == 1
    assert a.sequence_report(seed=3) == a.sequence_report(seed=3)

    code, text, doc = pg.run("cohomology", str(ROOT / "fixtures" / "fixA.toml"), n=1)
    assert code == 0 and "H^1: trivial" in text
    assert json.loads(doc)["command"] == "cohomology"
    code, _, _ = pg.run("crossed", str(ROOT / "fixtures" / "fixA_bad_twist.toml"), check=True)
    assert code == 2

    assert len(pg.Ring([6])) == 2
    try:
        pg.Ring([1])
    except ValueError:
        pass
    else:
        raise AssertionError("Z/1 is rejected")

    print("smoke test passed")


if __name__ == "__main__":
    main()
