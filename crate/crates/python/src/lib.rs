//! Python bindings: `import partial_galois`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use partial_galois::algebra::FiniteAlgebra;
use partial_galois::cli::{self, Command};
use partial_galois::cohomology::{cohomology_group, Cochain};
use partial_galois::crossed::CrossedRing as CoreCrossed;
use partial_galois::finring::{Idem, Ring as CoreRing};
use partial_galois::gencross::{self, FreeFactorSet};
use partial_galois::input::parse_input;
use partial_galois::paction::{PartialAction as CoreAction, Twisting as CoreTwisting};
use partial_galois::{fixtures, galois, pics, sequence, Error};

fn err(e: Error) -> PyErr {
    match e {
        Error::Input(_) | Error::Validation(_) | Error::Arity { .. } | Error::NotAUnit { .. } | Error::Domain(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// 0/1 list (a `Vec<u8>` would become `bytes`).
fn bits(e: &Idem) -> Vec<u32> {
    e.0.iter().map(|&b| b as u32).collect()
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|d| d.to_string()).collect()
}

/// `Z/m_1 x ... x Z/m_k`; composite moduli are split into prime powers.
#[pyclass(name = "Ring", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Ring {
    inner: CoreRing,
}

#[pymethods]
impl Ring {
    #[new]
    fn new(moduli: Vec<u64>) -> PyResult<Ring> {
        Ok(Ring { inner: CoreRing::parse(&moduli).map_err(err)? })
    }

    fn moduli(&self) -> Vec<u64> {
        self.inner.moduli()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn cardinality(&self) -> String {
        self.inner.cardinality().to_string()
    }

    /// Idempotents as 0/1 vectors.
    fn idempotents(&self) -> Vec<Vec<u32>> {
        self.inner.idempotents().iter().map(bits).collect()
    }

    /// Invariant factors of the unit group.
    fn unit_group(&self) -> Vec<String> {
        let u = self.inner.unit_group(&Idem::full(self.inner.len()));
        strings(&u.group().invariant_factors())
    }

    fn mul(&self, x: Vec<i64>, y: Vec<i64>) -> PyResult<Vec<u64>> {
        let x = self.inner.elem(&x).map_err(err)?;
        let y = self.inner.elem(&y).map_err(err)?;
        Ok(self.inner.mul(&x, &y).0)
    }

    fn __repr__(&self) -> String {
        format!("Ring({:?})", self.inner.moduli())
    }
}

/// A unital partial action of a finite group on a finite ring.
#[pyclass(name = "PartialAction", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PartialAction {
    inner: CoreAction,
    twist: Option<CoreTwisting>,
}

#[pymethods]
impl PartialAction {
    /// Parse the TOML input format used by `pgal`.
    #[staticmethod]
    fn from_toml(text: &str) -> PyResult<PartialAction> {
        let input = parse_input(text).map_err(err)?;
        Ok(PartialAction { inner: input.action, twist: input.twist })
    }

    #[staticmethod]
    fn fix_a() -> PartialAction {
        PartialAction { inner: fixtures::fix_a(), twist: None }
    }

    #[staticmethod]
    fn fix_b() -> PartialAction {
        PartialAction { inner: fixtures::fix_b(), twist: None }
    }

    #[staticmethod]
    fn non_galois() -> PartialAction {
        PartialAction { inner: fixtures::non_galois(), twist: None }
    }

    #[getter]
    fn ring(&self) -> Ring {
        Ring { inner: self.inner.ring().clone() }
    }

    #[getter]
    fn group_order(&self) -> usize {
        self.inner.group().order()
    }

    /// `1_g` as a 0/1 vector.
    fn one(&self, g: usize) -> PyResult<Vec<u32>> {
        if g >= self.inner.group().order() {
            return Err(PyValueError::new_err(format!("no group element {g}")));
        }
        Ok(bits(self.inner.one(g)))
    }

    /// `alpha_g(x)` for `x` in `D_{g^-1}`.
    fn apply(&self, g: usize, x: Vec<i64>) -> PyResult<Vec<u64>> {
        if g >= self.inner.group().order() {
            return Err(PyValueError::new_err(format!("no group element {g}")));
        }
        let x = self.inner.ring().elem(&x).map_err(err)?;
        Ok(self.inner.apply(g, &x).map_err(err)?.0)
    }

    /// Names of the failing axioms (empty when valid).
    fn validate(&self) -> Vec<String> {
        let mut out: Vec<String> =
            self.inner.validate().checks.iter().filter(|c| !c.passed).map(|c| c.axiom.clone()).collect();
        if let Some(t) = &self.twist {
            out.extend(t.validate(&self.inner).checks.iter().filter(|c| !c.passed).map(|c| format!("twist {}", c.axiom)));
        }
        out
    }

    fn invariant_order(&self) -> String {
        self.inner.invariant_subring().order().to_string()
    }

    fn is_galois(&self) -> PyResult<bool> {
        Ok(galois::galois_certificate(&self.inner, None).map_err(err)?.galois)
    }

    /// Invariant factors of `H^n`; an empty list is the trivial group.
    fn cohomology(&self, n: usize) -> PyResult<Vec<String>> {
        let h = cohomology_group(&self.inner, n).map_err(err)?;
        Ok(strings(h.invariant_factors()))
    }

    /// Classes of `PicS(R)` fixed by `alpha*`.
    fn pics_fixed(&self) -> Vec<Vec<u32>> {
        pics::fixed_classes(&self.inner).iter().map(bits).collect()
    }

    fn crossed_product(&self) -> PyResult<CrossedProduct> {
        let t = self.twist.clone().unwrap_or_else(|| CoreTwisting::trivial(&self.inner));
        Ok(CrossedProduct { inner: CoreCrossed::new(self.inner.clone(), t).map_err(err)? })
    }

    /// `(associative, omega_f trivial)` for the factor set of the twist.
    fn gencross(&self) -> PyResult<(bool, bool)> {
        let fs = match &self.twist {
            Some(t) => gencross::factor_set_from_cochain(&self.inner, &Cochain::new(2, t.values().to_vec()))
                .map_err(err)?,
            None => FreeFactorSet::trivial(&self.inner),
        };
        let r = gencross::gencross_report(&fs).map_err(err)?;
        Ok((r.associative, r.omega_f_trivial))
    }

    /// The seven-term sequence report as JSON.
    #[pyo3(signature = (seed=0))]
    fn sequence_report(&self, seed: u64) -> PyResult<String> {
        let input = sequence::SequenceInput {
            action: self.inner.clone(),
            twist: self.twist.clone(),
            coordinates: None,
            seed,
        };
        Ok(sequence::report_json(&sequence::seven_term_report(&input).map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!("PartialAction(ring={:?}, |G|={})", self.inner.ring().moduli(), self.inner.group().order())
    }
}

/// The partial crossed product `R *_{alpha,omega} G`.
#[pyclass(name = "CrossedProduct", frozen)]
struct CrossedProduct {
    inner: CoreCrossed,
}

#[pymethods]
impl CrossedProduct {
    fn order(&self) -> String {
        self.inner.order().to_string()
    }

    /// `None` when associative, otherwise the witness text.
    fn associativity_witness(&self) -> Option<String> {
        self.inner.associativity_check().witness.map(|w| w.to_string())
    }

    fn center_order(&self) -> PyResult<String> {
        Ok(self.inner.center().map_err(err)?.order().to_string())
    }
}

/// Run a `pgal` command on a TOML file; returns `(exit_code, text, json)`.
#[pyfunction]
#[pyo3(signature = (command, path, seed=None, n=0, check=false))]
fn run(command: &str, path: &str, seed: Option<u64>, n: usize, check: bool) -> PyResult<(i32, String, String)> {
    let cmd = match command {
        "validate" => Command::Validate,
        "galois" => Command::Galois,
        "cohomology" => Command::Cohomology { n },
        "crossed" => Command::Crossed { check },
        "pics" => Command::Pics,
        "gencross" => Command::Gencross { check },
        "sequence-check" => Command::SequenceCheck,
        "units" => Command::Units,
        other => return Err(PyValueError::new_err(format!("unknown command {other}"))),
    };
    let out = cli::run_file(&cmd, std::path::Path::new(path), seed);
    let json = out.json(&cmd);
    Ok((out.code, out.text, json))
}

#[pymodule(name = "partial_galois")]
pub fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add_class::<PartialAction>()?;
    m.add_class::<CrossedProduct>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
