use partial_galois_py::init;
use pyo3::prelude::*;

#[test]
fn module_runs_inside_an_embedded_interpreter() {
    pyo3::append_to_inittab!(init);
    Python::initialize();
    let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures");
    Python::attach(|py| {
        let locals = pyo3::types::PyDict::new(py);
        locals.set_item("fixtures", fixtures).unwrap();
        py.run(
            cr#"
import json
import partial_galois as pg

r = pg.Ring([12, 5])
assert r.moduli() == [4, 3, 5]
assert r.mul([2, 1, 0], [3, 2, 4]) == [2, 2, 0]

b = pg.PartialAction.fix_b()
assert b.one(1) == [0, 1, 1]
assert b.apply(1, [2, 1, 0]) == [0, 2, 1]
assert b.validate() == []
assert b.is_galois()
assert b.cohomology(0) == ["2"]
assert b.cohomology(1) == [] and b.cohomology(2) == []
assert sorted(b.pics_fixed()) == [[0, 0, 0], [1, 1, 1]]
assert b.crossed_product().order() == str(3 ** 9)
assert b.crossed_product().associativity_witness() is None
assert json.loads(b.sequence_report(seed=1))["passed"]

assert not pg.PartialAction.non_galois().is_galois()

code, text, doc = pg.run("crossed", fixtures + "/fixA_bad_twist.toml", check=True)
assert code == 2 and "(g1,g1,g1)" in text
assert json.loads(doc)["exit_code"] == 2

try:
    pg.Ring([1])
    raise AssertionError("modulus 1 accepted")
except ValueError:
    pass
"#,
            None,
            Some(&locals),
        )
        .unwrap();
    });
}
