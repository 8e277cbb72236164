//! Finite algebras viewed through their additive groups, and exact checks of
//! candidate ring maps between them.

use std::fmt::Debug;

use num_bigint::BigInt;
use serde::Serialize;

use crate::abelian::{FinAbGroup, GroupHom, Subgroup};
use crate::error::Result;

/// An associative (or candidate associative) ring whose additive group is a
/// subgroup of a coordinate group.
pub trait FiniteAlgebra {
    type Elem: Clone + PartialEq + Debug;

    /// Coordinate group the elements live in.
    fn ambient(&self) -> FinAbGroup;

    /// The elements of the algebra inside [`Self::ambient`].
    fn carrier(&self) -> Subgroup {
        Subgroup::whole(&self.ambient())
    }

    fn coords(&self, x: &Self::Elem) -> Vec<BigInt>;

    fn from_coords(&self, v: &[BigInt]) -> Self::Elem;

    /// Additive generators of the carrier.
    fn additive_basis(&self) -> Vec<Self::Elem> {
        self.carrier().generators().iter().map(|v| self.from_coords(v)).collect()
    }

    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    fn one(&self) -> Self::Elem;

    fn describe(&self, x: &Self::Elem) -> String;

    fn order(&self) -> BigInt {
        self.carrier().order()
    }

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let g = self.ambient();
        let d: Vec<BigInt> =
            self.coords(x).iter().zip(self.coords(y)).map(|(a, b)| a - b).collect();
        self.from_coords(&g.canonical(&d))
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let g = self.ambient();
        self.from_coords(&g.add(&self.coords(x), &self.coords(y)))
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        self.ambient().is_zero(&self.coords(x))
    }

    /// `{x : xy = yx for all y in ys}`.
    fn commutant(&self, ys: &[Self::Elem]) -> Result<Subgroup> {
        let carrier = self.carrier();
        let amb = self.ambient();
        let source = carrier.as_group();
        let target = FinAbGroup::direct_sum(&vec![amb; ys.len()]);
        let images: Vec<Vec<BigInt>> = carrier
            .generators()
            .iter()
            .map(|v| {
                let x = self.from_coords(v);
                ys.iter()
                    .flat_map(|y| self.coords(&self.sub(&self.mul(&x, y), &self.mul(y, &x))))
                    .collect()
            })
            .collect();
        let hom = GroupHom::from_images(source, target, &images)?;
        let kernel = hom.kernel();
        let emb = carrier.embedding();
        let gens: Vec<Vec<BigInt>> = kernel.generators().iter().map(|k| emb.apply(k)).collect();
        Ok(Subgroup::generated(&self.ambient(), &gens))
    }
}

/// First basis triple violating associativity.
pub fn associativity_witness<A: FiniteAlgebra>(
    alg: &A,
    basis: &[A::Elem],
) -> Option<(A::Elem, A::Elem, A::Elem, A::Elem, A::Elem)> {
    for x in basis {
        for y in basis {
            let xy = alg.mul(x, y);
            for z in basis {
                let left = alg.mul(&xy, z);
                let right = alg.mul(x, &alg.mul(y, z));
                if left != right {
                    return Some((x.clone(), y.clone(), z.clone(), left, right));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingMapReport {
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
    pub multiplicative: bool,
    pub unital: bool,
    pub source_order: String,
    pub target_order: String,
    pub witness: Option<String>,
}

impl RingMapReport {
    pub fn is_iso(&self) -> bool {
        self.well_defined && self.injective && self.surjective && self.multiplicative && self.unital
    }
}

/// Extends `f` additively from the carrier generators of `src` and checks it
/// is a unital ring isomorphism onto the carrier of `dst`.
pub fn verify_ring_map<A: FiniteAlgebra, B: FiniteAlgebra>(
    src: &A,
    dst: &B,
    f: impl Fn(&A::Elem) -> B::Elem,
) -> RingMapReport {
    let carrier = src.carrier();
    let target_carrier = dst.carrier();
    let mut report = RingMapReport {
        well_defined: false,
        injective: false,
        surjective: false,
        multiplicative: false,
        unital: false,
        source_order: carrier.order().to_string(),
        target_order: target_carrier.order().to_string(),
        witness: None,
    };
    let gens: Vec<A::Elem> = carrier.generators().iter().map(|v| src.from_coords(v)).collect();
    let images: Vec<Vec<BigInt>> = gens.iter().map(|x| dst.coords(&f(x))).collect();
    let target_solver = target_carrier.solver();
    if let Some(k) = images.iter().position(|v| target_solver.coefficients(v).is_none()) {
        report.witness = Some(format!("image of {} leaves the target", src.describe(&gens[k])));
        return report;
    }
    let hom = match GroupHom::from_images(carrier.as_group(), dst.ambient(), &images) {
        Ok(h) => h,
        Err(e) => {
            report.witness = Some(e.to_string());
            return report;
        }
    };
    report.well_defined = true;
    report.injective = hom.is_injective();
    report.surjective = hom.image().same_as(&target_carrier);
    let solver = carrier.solver();
    let lin = |x: &A::Elem| {
        let c = solver.coefficients(&src.coords(x)).expect("element of the source carrier");
        dst.from_coords(&hom.apply(&c))
    };
    report.unital = lin(&src.one()) == dst.one();
    report.multiplicative = true;
    'outer: for x in &gens {
        for y in &gens {
            let lhs = lin(&src.mul(x, y));
            let rhs = dst.mul(&lin(x), &lin(y));
            if lhs != rhs {
                report.multiplicative = false;
                report.witness = Some(format!(
                    "f({} * {}) = {} but f(x) f(y) = {}",
                    src.describe(x),
                    src.describe(y),
                    dst.describe(&lhs),
                    dst.describe(&rhs)
                ));
                break 'outer;
            }
        }
    }
    if report.witness.is_none() && !report.unital {
        report.witness = Some(format!("f(1) = {}", dst.describe(&lin(&src.one()))));
    }
    report
}

impl FiniteAlgebra for crate::finring::Ring {
    type Elem = crate::finring::RingElem;

    fn ambient(&self) -> FinAbGroup {
        self.additive_group()
    }

    fn coords(&self, x: &Self::Elem) -> Vec<BigInt> {
        self.to_coords(x)
    }

    fn from_coords(&self, v: &[BigInt]) -> Self::Elem {
        crate::finring::Ring::from_coords(self, v)
    }

    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        crate::finring::Ring::mul(self, x, y)
    }

    fn one(&self) -> Self::Elem {
        crate::finring::Ring::one(self)
    }

    fn describe(&self, x: &Self::Elem) -> String {
        x.to_string()
    }
}
