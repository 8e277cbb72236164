//! Partial group cohomology with values in the unit groups `U(R e(g1..gn))`.
//!
//! A cochain group `C^n` is the direct sum over all n-tuples of the unit
//! group of `R e(g)`, `e(g1..gn) = 1_{g1} 1_{g1 g2} ... 1_{g1...gn}`, so its
//! coordinates are concatenated discrete logarithms.

use num_bigint::BigInt;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{FinAbGroup, GroupHom, Quotient, Subgroup};
use crate::error::{Error, Result};
use crate::finring::{Idem, RingElem, UnitGroup};
use crate::paction::PartialAction;

/// Highest cochain degree built by default. `H^3` needs `C^4` as the target
/// of `delta^3`.
pub const DEFAULT_DEGREE_CAP: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    n: usize,
    values: Vec<RingElem>,
}

impl Cochain {
    /// Values listed over `G^n` in lexicographic order.
    pub fn new(n: usize, values: Vec<RingElem>) -> Cochain {
        Cochain { n, values }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[RingElem] {
        &self.values
    }

    pub fn value(&self, order: usize, tuple: &[usize]) -> &RingElem {
        &self.values[tuple_index(order, tuple)]
    }

    pub fn set(&mut self, order: usize, tuple: &[usize], v: RingElem) {
        self.values[tuple_index(order, tuple)] = v;
    }
}

pub fn tuple_index(order: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * order + g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TupleValue {
    pub tuple: Vec<String>,
    pub value: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct CochainGroup {
    n: usize,
    tuples: Vec<Vec<usize>>,
    idems: Vec<Idem>,
    units: Vec<UnitGroup>,
    offsets: Vec<usize>,
    group: FinAbGroup,
}

impl CochainGroup {
    pub fn new(a: &PartialAction, n: usize) -> Result<CochainGroup> {
        CochainGroup::with_cap(a, n, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(a: &PartialAction, n: usize, cap: usize) -> Result<CochainGroup> {
        if n > cap {
            return Err(Error::Unsupported(format!("cochain degree {n} exceeds the cap {cap}")));
        }
        let g = a.group();
        let tuples = g.tuples(n);
        let idems: Vec<Idem> = tuples.iter().map(|t| a.tuple_idem(t)).collect();
        let units: Vec<UnitGroup> = idems.iter().map(|e| a.ring().unit_group(e)).collect();
        let mut offsets = Vec::with_capacity(units.len() + 1);
        let mut orders = Vec::new();
        offsets.push(0);
        for u in &units {
            orders.extend(u.generators().iter().map(|x| x.order));
            offsets.push(orders.len());
        }
        Ok(CochainGroup {
            n,
            tuples,
            idems,
            units,
            offsets,
            group: FinAbGroup::diagonal(&orders),
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn idem(&self, k: usize) -> &Idem {
        &self.idems[k]
    }

    pub fn unit_group(&self, k: usize) -> &UnitGroup {
        &self.units[k]
    }

    /// The product of all coordinate unit groups.
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn order(&self) -> BigInt {
        self.group.order()
    }

    /// `g -> e(g)`.
    pub fn identity(&self) -> Cochain {
        Cochain::new(self.n, self.idems.iter().map(|e| e.to_elem()).collect())
    }

    /// Checks every value is a unit of its ideal; names the first bad tuple.
    pub fn check(&self, f: &Cochain) -> Result<()> {
        if f.n != self.n || f.values.len() != self.tuples.len() {
            return Err(Error::Validation(format!(
                "expected a {}-cochain with {} values",
                self.n,
                self.tuples.len()
            )));
        }
        for (k, v) in f.values.iter().enumerate() {
            if v.0.len() != self.idems[k].0.len()
                || !v.lies_in(&self.idems[k])
                || self.units[k].dlog(v).is_err()
            {
                return Err(Error::Validation(format!(
                    "value {v} at {:?} is not a unit of R{}",
                    self.tuples[k],
                    self.idems[k]
                )));
            }
        }
        Ok(())
    }

    pub fn contains(&self, f: &Cochain) -> bool {
        self.check(f).is_ok()
    }

    /// Exponent coordinates of `f`.
    pub fn coords(&self, f: &Cochain) -> Result<Vec<BigInt>> {
        self.check(f)?;
        let mut out = Vec::with_capacity(self.group.rank());
        for (k, v) in f.values.iter().enumerate() {
            out.extend(self.units[k].dlog(v)?.into_iter().map(BigInt::from));
        }
        Ok(out)
    }

    pub fn from_coords(&self, x: &[BigInt]) -> Cochain {
        let values = self
            .units
            .iter()
            .enumerate()
            .map(|(k, u)| u.exp_big(&x[self.offsets[k]..self.offsets[k + 1]]))
            .collect();
        Cochain::new(self.n, values)
    }

    /// The cochain equal to the identity except for generator `j`.
    pub fn generator(&self, j: usize) -> Cochain {
        let mut x = vec![BigInt::from(0); self.group.rank()];
        x[j] = BigInt::from(1);
        self.from_coords(&x)
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> Cochain {
        let x: Vec<BigInt> = self
            .units
            .iter()
            .flat_map(|u| u.generators().iter().map(|g| g.order).collect::<Vec<_>>())
            .map(|o| BigInt::from(rng.gen_range(0..o)))
            .collect();
        self.from_coords(&x)
    }

    /// Every cochain (small groups only).
    pub fn elements(&self) -> Vec<Cochain> {
        self.group.elements().iter().map(|x| self.from_coords(x)).collect()
    }

    /// Pointwise product.
    pub fn mul(&self, a: &PartialAction, f: &Cochain, h: &Cochain) -> Cochain {
        let values =
            f.values.iter().zip(&h.values).map(|(x, y)| a.ring().mul(x, y)).collect();
        Cochain::new(self.n, values)
    }

    pub fn inverse(&self, a: &PartialAction, f: &Cochain) -> Result<Cochain> {
        let values = f
            .values
            .iter()
            .zip(&self.idems)
            .map(|(x, e)| a.ring().inverse_in_ideal(x, e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cochain::new(self.n, values))
    }

    /// `f(g) = e(g)` whenever some entry of `g` is the identity.
    pub fn is_normalized(&self, f: &Cochain) -> bool {
        self.tuples
            .iter()
            .zip(&f.values)
            .zip(&self.idems)
            .all(|((t, v), e)| !t.contains(&0) || *v == e.to_elem())
    }

    pub fn listing(&self, a: &PartialAction, f: &Cochain) -> Vec<TupleValue> {
        self.tuples
            .iter()
            .zip(&f.values)
            .map(|(t, v)| TupleValue {
                tuple: t.iter().map(|&g| a.group().label(g).to_string()).collect(),
                value: v.0.clone(),
            })
            .collect()
    }
}

/// `(delta^n f)(g1..g_{n+1})`, every factor cut to `e(g1..g_{n+1})` first.
fn coboundary_value(a: &PartialAction, f: &Cochain, tuple: &[usize]) -> Result<RingElem> {
    let ring = a.ring();
    let g = a.group();
    let order = g.order();
    let n = f.n;
    let e = a.tuple_idem(tuple);
    let invert = |x: &RingElem| ring.inverse_in_ideal(&ring.cut(x, &e), &e);
    let mut acc = ring.cut(&a.apply_cut(tuple[0], f.value(order, &tuple[1..])), &e);
    let mut merged = Vec::with_capacity(n);
    for i in 1..=n {
        merged.clear();
        merged.extend_from_slice(&tuple[..i - 1]);
        merged.push(g.mul(tuple[i - 1], tuple[i]));
        merged.extend_from_slice(&tuple[i + 1..]);
        let v = f.value(order, &merged);
        let factor = if i % 2 == 1 { invert(v)? } else { ring.cut(v, &e) };
        acc = ring.mul(&acc, &factor);
    }
    let last = f.value(order, &tuple[..n]);
    let factor = if (n + 1) % 2 == 1 { invert(last)? } else { ring.cut(last, &e) };
    Ok(ring.mul(&acc, &factor))
}

fn coboundary_unchecked(a: &PartialAction, f: &Cochain) -> Result<Cochain> {
    let tuples = a.group().tuples(f.n + 1);
    let values =
        tuples.iter().map(|t| coboundary_value(a, f, t)).collect::<Result<Vec<_>>>()?;
    Ok(Cochain::new(f.n + 1, values))
}

/// `delta^n f`.
pub fn coboundary(a: &PartialAction, f: &Cochain) -> Result<Cochain> {
    CochainGroup::with_cap(a, f.n, usize::MAX)?.check(f)?;
    coboundary_unchecked(a, f)
}

/// First tuple where `delta f` differs from the identity.
pub fn cocycle_defect(a: &PartialAction, f: &Cochain) -> Result<Option<Vec<usize>>> {
    let df = coboundary(a, f)?;
    let tuples = a.group().tuples(f.n + 1);
    Ok(tuples
        .into_iter()
        .zip(&df.values)
        .find(|(t, v)| **v != a.tuple_idem(t).to_elem())
        .map(|(t, _)| t))
}

pub fn is_cocycle(a: &PartialAction, f: &Cochain) -> Result<bool> {
    Ok(cocycle_defect(a, f)?.is_none())
}

/// `delta^n` as a homomorphism `C^n -> C^{n+1}`.
#[derive(Clone, Debug)]
pub struct Coboundary {
    pub source: CochainGroup,
    pub target: CochainGroup,
    pub hom: GroupHom,
}

pub fn coboundary_matrix(a: &PartialAction, n: usize) -> Result<Coboundary> {
    if n + 1 > DEFAULT_DEGREE_CAP {
        return Err(Error::Unsupported(format!("coboundary matrix in degree {n}")));
    }
    let source = CochainGroup::new(a, n)?;
    let target = CochainGroup::new(a, n + 1)?;
    let images = (0..source.group().rank())
        .into_par_iter()
        .map(|j| {
            let f = source.generator(j);
            target.coords(&coboundary_unchecked(a, &f)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let hom = GroupHom::from_images(source.group().clone(), target.group().clone(), &images)?;
    Ok(Coboundary { source, target, hom })
}

/// `H^n = ker delta^n / im delta^{n-1}` with cocycle representatives.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub n: usize,
    pub cochains: CochainGroup,
    pub cocycles: Subgroup,
    pub coboundaries: Subgroup,
    quotient: Quotient,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologySummary {
    pub n: usize,
    pub invariant_factors: Vec<String>,
    pub cochain_order: String,
    pub cocycle_order: String,
    pub coboundary_order: String,
    pub representatives: Vec<Vec<TupleValue>>,
}

impl CohomologyGroup {
    pub fn invariant_factors(&self) -> &[BigInt] {
        self.quotient.invariant_factors()
    }

    pub fn is_trivial(&self) -> bool {
        self.quotient.is_trivial()
    }

    pub fn order(&self) -> BigInt {
        self.quotient.order()
    }

    /// One cocycle per invariant-factor generator.
    pub fn representatives(&self) -> Vec<Cochain> {
        self.quotient.representatives().iter().map(|x| self.cochains.from_coords(x)).collect()
    }

    /// Class coordinates of a cocycle.
    pub fn class_of(&self, f: &Cochain) -> Result<Option<Vec<BigInt>>> {
        Ok(self.quotient.class_of(&self.cochains.coords(f)?))
    }

    pub fn summary(&self, a: &PartialAction) -> CohomologySummary {
        CohomologySummary {
            n: self.n,
            invariant_factors: self.invariant_factors().iter().map(|d| d.to_string()).collect(),
            cochain_order: self.cochains.order().to_string(),
            cocycle_order: self.cocycles.order().to_string(),
            coboundary_order: self.coboundaries.order().to_string(),
            representatives: self
                .representatives()
                .iter()
                .map(|f| self.cochains.listing(a, f))
                .collect(),
        }
    }
}

pub fn cohomology_group(a: &PartialAction, n: usize) -> Result<CohomologyGroup> {
    let delta = coboundary_matrix(a, n)?;
    let cocycles = delta.hom.kernel();
    let coboundaries = if n == 0 {
        Subgroup::generated(delta.source.group(), &[])
    } else {
        let prev = coboundary_matrix(a, n - 1)?;
        prev.hom.image()
    };
    let quotient = cocycles.quotient(&coboundaries)?;
    Ok(CohomologyGroup { n, cochains: delta.source, cocycles, coboundaries, quotient })
}

/// `rho` with `delta^{n-1} rho = f`, or `None` when `f` is not a coboundary.
pub fn coboundary_solve(a: &PartialAction, f: &Cochain) -> Result<Option<Cochain>> {
    if f.n == 0 {
        return Err(Error::Unsupported("0-cochains have no coboundary preimage".into()));
    }
    if let Some(tuple) = cocycle_defect(a, f)? {
        return Err(Error::NotACocycle { tuple });
    }
    let delta = coboundary_matrix(a, f.n - 1)?;
    let b = delta.target.coords(f)?;
    Ok(delta.hom.solve(&b).map(|x| delta.source.from_coords(&x)))
}
