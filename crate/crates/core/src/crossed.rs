//! The twisted partial crossed product `R *_{alpha,omega} G = (+) D_g d_g`,
//! modules over it, and the maps attached to 1-cocycles.

use num_bigint::BigInt;
use serde::Serialize;

use crate::abelian::{FinAbGroup, GroupHom, Subgroup};
use crate::algebra::{verify_ring_map, FiniteAlgebra, RingMapReport};
use crate::cohomology::{self, Cochain, CochainGroup};
use crate::error::{Error, Result};
use crate::finring::{Idem, Ring, RingElem};
use crate::galois::EndRing;
use crate::paction::{PartialAction, SubringDescriptor, Twisting};

/// `sum_g a_g d_g` with `a_g` in `D_g`, indexed by group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrossedElem {
    pub coeffs: Vec<RingElem>,
}

impl CrossedElem {
    pub fn zero(a: &PartialAction) -> CrossedElem {
        CrossedElem { coeffs: vec![a.ring().zero(); a.group().order()] }
    }

    /// `r d_g`.
    pub fn single(a: &PartialAction, g: usize, r: RingElem) -> CrossedElem {
        let mut x = CrossedElem::zero(a);
        x.coeffs[g] = r;
        x
    }

    pub fn format(&self, a: &PartialAction, symbol: &str) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, c)| format!("{c}{symbol}_{}", a.group().label(g)))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Coordinates of `(+) D_g`: residues of `a_g` on the support of `1_g`.
#[derive(Clone, Debug)]
pub struct GradedLayout {
    ring: Ring,
    supports: Vec<Vec<usize>>,
    group: FinAbGroup,
}

impl GradedLayout {
    pub fn new(a: &PartialAction) -> GradedLayout {
        let supports: Vec<Vec<usize>> = a.ones().iter().map(|e| e.support()).collect();
        let moduli: Vec<u64> =
            supports.iter().flat_map(|s| s.iter().map(|&j| a.ring().modulus(j))).collect();
        GradedLayout { ring: a.ring().clone(), supports, group: FinAbGroup::diagonal(&moduli) }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn coords(&self, x: &CrossedElem) -> Vec<BigInt> {
        self.supports
            .iter()
            .zip(&x.coeffs)
            .flat_map(|(s, c)| s.iter().map(|&j| BigInt::from(c.0[j])).collect::<Vec<_>>())
            .collect()
    }

    pub fn from_coords(&self, v: &[BigInt]) -> CrossedElem {
        let mut k = 0;
        let coeffs = self
            .supports
            .iter()
            .map(|s| {
                let mut full = vec![BigInt::from(0); self.ring.len()];
                for &j in s {
                    full[j] = v[k].clone();
                    k += 1;
                }
                self.ring.from_coords(&full)
            })
            .collect();
        CrossedElem { coeffs }
    }

    /// `e_j d_g` for every `g` and every `j` in the support of `1_g`.
    pub fn basis(&self) -> Vec<(usize, usize)> {
        self.supports
            .iter()
            .enumerate()
            .flat_map(|(g, s)| s.iter().map(move |&j| (g, j)))
            .collect()
    }

    pub fn check(&self, a: &PartialAction, x: &CrossedElem) -> Result<()> {
        if x.coeffs.len() != self.supports.len() {
            return Err(Error::Arity { expected: self.supports.len(), got: x.coeffs.len() });
        }
        for (g, c) in x.coeffs.iter().enumerate() {
            self.ring.check(c)?;
            if !c.lies_in(a.one(g)) {
                return Err(Error::Domain(format!(
                    "coefficient {c} at {} is outside D_{}",
                    a.group().label(g),
                    a.group().label(g)
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssociativityReport {
    pub associative: bool,
    pub triples_checked: usize,
    pub witness: Option<AssociativityWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssociativityWitness {
    pub tuple: Vec<String>,
    pub coefficients: Vec<Vec<u64>>,
    pub left: String,
    pub right: String,
}

impl std::fmt::Display for AssociativityWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}): left {} != right {}", self.tuple.join(","), self.left, self.right)
    }
}

#[derive(Clone, Debug)]
pub struct CrossedRing {
    action: PartialAction,
    twisting: Twisting,
    layout: GradedLayout,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl CrossedRing {
    /// Requires every `omega_{g,h}` to be a unit of `D_g D_gh`; associativity
    /// is not required (see [`Self::associativity_check`]).
    pub fn new(action: PartialAction, twisting: Twisting) -> Result<CrossedRing> {
        let report = twisting.validate(&action);
        let units = report.check("units").expect("units check");
        if !units.passed {
            return Err(Error::Validation(units.witness.clone().unwrap_or_default()));
        }
        let layout = GradedLayout::new(&action);
        Ok(CrossedRing { action, twisting, layout })
    }

    pub fn untwisted(action: PartialAction) -> CrossedRing {
        let twisting = Twisting::trivial(&action);
        CrossedRing::new(action, twisting).expect("trivial twisting")
    }

    pub fn action(&self) -> &PartialAction {
        &self.action
    }

    pub fn twisting(&self) -> &Twisting {
        &self.twisting
    }

    pub fn layout(&self) -> &GradedLayout {
        &self.layout
    }

    pub fn single(&self, g: usize, r: RingElem) -> CrossedElem {
        CrossedElem::single(&self.action, g, r)
    }

    /// Coefficient of `(r d_g)(t d_h) = r alpha_g(t 1_{g^-1}) omega_{g,h} d_{gh}`.
    pub fn basis_mul(&self, g: usize, r: &RingElem, h: usize, t: &RingElem) -> RingElem {
        let ring = self.action.ring();
        ring.mul(&ring.mul(r, &self.action.apply_cut(g, t)), self.twisting.get(g, h))
    }

    /// Unchecked product.
    pub fn product(&self, x: &CrossedElem, y: &CrossedElem) -> CrossedElem {
        let ring = self.action.ring();
        let grp = self.action.group();
        let mut out = CrossedElem::zero(&self.action);
        for (g, r) in x.coeffs.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            for (h, t) in y.coeffs.iter().enumerate() {
                if t.is_zero() {
                    continue;
                }
                let gh = grp.mul(g, h);
                out.coeffs[gh] = ring.add(&out.coeffs[gh], &self.basis_mul(g, r, h, t));
            }
        }
        out
    }

    pub fn cp_mul(&self, x: &CrossedElem, y: &CrossedElem) -> Result<CrossedElem> {
        self.layout.check(&self.action, x)?;
        self.layout.check(&self.action, y)?;
        Ok(self.product(x, y))
    }

    /// `r x` (coefficientwise) or `x r` (`(a d_g) r = a alpha_g(r 1_{g^-1}) d_g`).
    pub fn bimodule_act(&self, side: Side, r: &RingElem, x: &CrossedElem) -> CrossedElem {
        let ring = self.action.ring();
        let coeffs = x
            .coeffs
            .iter()
            .enumerate()
            .map(|(g, a)| match side {
                Side::Left => ring.mul(r, a),
                Side::Right => ring.mul(a, &self.action.apply_cut(g, r)),
            })
            .collect();
        CrossedElem { coeffs }
    }

    /// Coefficients tried in each degree: `1_g` first, then the other
    /// idempotents below `1_g`, then the unit-group generators of `D_g`.
    fn panel(&self, g: usize) -> Vec<RingElem> {
        let ring = self.action.ring();
        let one = self.action.one(g);
        let mut out = vec![one.to_elem()];
        for e in ring.idempotents() {
            if e.le(one) && !e.is_zero() && e != *one {
                out.push(e.to_elem());
            }
        }
        let units = ring.unit_group(one);
        out.extend((0..units.rank()).map(|k| units.generator_elem(k)));
        out
    }

    /// `((a d_g)(b d_h))(c d_l) = (a d_g)((b d_h)(c d_l))` over all degree
    /// triples and panel coefficients.
    pub fn associativity_check(&self) -> AssociativityReport {
        let grp = self.action.group();
        let n = grp.order();
        let panels: Vec<Vec<RingElem>> = (0..n).map(|g| self.panel(g)).collect();
        let mut checked = 0;
        for g in 0..n {
            for h in 0..n {
                let gh = grp.mul(g, h);
                for l in 0..n {
                    let hl = grp.mul(h, l);
                    for a in &panels[g] {
                        for b in &panels[h] {
                            let ab = self.basis_mul(g, a, h, b);
                            for c in &panels[l] {
                                checked += 1;
                                let left = self.basis_mul(gh, &ab, l, c);
                                let bc = self.basis_mul(h, b, l, c);
                                let right = self.basis_mul(g, a, hl, &bc);
                                if left != right {
                                    let ghl = grp.mul(gh, l);
                                    let fmt = |v: RingElem| {
                                        self.single(ghl, v).format(&self.action, "δ")
                                    };
                                    return AssociativityReport {
                                        associative: false,
                                        triples_checked: checked,
                                        witness: Some(AssociativityWitness {
                                            tuple: [g, h, l]
                                                .iter()
                                                .map(|&x| grp.label(x).to_string())
                                                .collect(),
                                            coefficients: vec![a.0.clone(), b.0.clone(), c.0.clone()],
                                            left: fmt(left),
                                            right: fmt(right),
                                        }),
                                    };
                                }
                            }
                        }
                    }
                }
            }
        }
        AssociativityReport { associative: true, triples_checked: checked, witness: None }
    }

    /// `{ r d_1 : r in S }` for an additive subgroup `S` of `R`.
    pub fn degree_one(&self, sub: &SubringDescriptor) -> Subgroup {
        let gens: Vec<Vec<BigInt>> = sub
            .generators()
            .into_iter()
            .map(|r| self.layout.coords(&self.single(0, r)))
            .collect();
        Subgroup::generated(self.layout.group(), &gens)
    }

    /// `(R e) d_g`.
    pub fn homogeneous(&self, g: usize, e: &Idem) -> Subgroup {
        let ring = self.action.ring();
        let gens: Vec<Vec<BigInt>> = e
            .meet(self.action.one(g))
            .support()
            .into_iter()
            .map(|j| self.layout.coords(&self.single(g, ring.basis(j))))
            .collect();
        Subgroup::generated(self.layout.group(), &gens)
    }

    pub fn center(&self) -> Result<Subgroup> {
        self.commutant(&self.additive_basis())
    }

    pub fn centralizer_of_r(&self) -> Result<Subgroup> {
        let ring = self.action.ring();
        let rs: Vec<CrossedElem> = (0..ring.len()).map(|j| self.single(0, ring.basis(j))).collect();
        self.commutant(&rs)
    }

    /// `j(sum r_g d_g)(r) = sum r_g alpha_g(r 1_{g^-1})`; only for the
    /// untwisted product.
    pub fn j_map(&self, end: &EndRing) -> Result<JMapReport> {
        if !self.twisting.is_trivial(&self.action) {
            return Err(Error::Unsupported("j is defined on the untwisted crossed product".into()));
        }
        let images: Vec<Vec<BigInt>> = self
            .layout
            .basis()
            .into_iter()
            .map(|(g, j)| {
                let x = self.single(g, self.action.ring().basis(j));
                end.coords(&j_endomorphism(&self.action, end, &x))
            })
            .collect();
        let hom = GroupHom::from_images(self.layout.group().clone(), end.ambient(), &images)?;
        let kernel_order = hom.kernel().order();
        let ring_map = verify_ring_map(self, end, |x| j_endomorphism(&self.action, end, x));
        Ok(JMapReport {
            crossed_order: self.order().to_string(),
            end_order: end.order().to_string(),
            kernel_order: kernel_order.to_string(),
            is_iso: ring_map.is_iso(),
            ring_map,
        })
    }

    /// `theta_f(r_g d_g) = r_g f(g) d_g`.
    pub fn theta_apply(&self, f: &Cochain, x: &CrossedElem) -> CrossedElem {
        let ring = self.action.ring();
        let coeffs =
            x.coeffs.iter().zip(f.values()).map(|(r, v)| ring.mul(r, v)).collect();
        CrossedElem { coeffs }
    }

    /// Multiplicativity and unitality of `theta_f` on basis pairs, for any
    /// 1-cochain `f`.
    pub fn theta_check(&self, f: &Cochain) -> Result<ThetaReport> {
        CochainGroup::new(&self.action, 1)?.check(f)?;
        let basis = self.additive_basis();
        let unital = self.theta_apply(f, &self.one()) == self.one();
        for x in &basis {
            for y in &basis {
                let lhs = self.theta_apply(f, &self.product(x, y));
                let rhs = self.product(&self.theta_apply(f, x), &self.theta_apply(f, y));
                if lhs != rhs {
                    return Ok(ThetaReport {
                        multiplicative: false,
                        unital,
                        witness: Some(format!(
                            "theta({} * {}) = {} but theta(x) theta(y) = {}",
                            self.describe(x),
                            self.describe(y),
                            self.describe(&lhs),
                            self.describe(&rhs)
                        )),
                    });
                }
            }
        }
        Ok(ThetaReport { multiplicative: true, unital, witness: None })
    }

    /// [`Self::theta_check`] after confirming `f` is a 1-cocycle.
    pub fn theta_f(&self, f: &Cochain) -> Result<ThetaReport> {
        if let Some(tuple) = cohomology::cocycle_defect(&self.action, f)? {
            return Err(Error::NotACocycle { tuple });
        }
        self.theta_check(f)
    }

    /// `a_g d_g -> a_g rho(g)^-1 d_g`, from this ring onto the crossed product
    /// twisted by `(delta^1 rho) omega`, checked to be a ring isomorphism.
    pub fn cocycle_scaling_iso(&self, rho: &Cochain) -> Result<ScalingIso> {
        let c1 = CochainGroup::new(&self.action, 1)?;
        c1.check(rho)?;
        let inv = c1.inverse(&self.action, rho)?;
        let d = cohomology::coboundary(&self.action, rho)?;
        let ring = self.action.ring();
        let n = self.action.group().order();
        let values: Vec<RingElem> = (0..n * n)
            .map(|k| ring.mul(&d.values()[k], self.twisting.get(k / n, k % n)))
            .collect();
        let target = CrossedRing::new(self.action.clone(), Twisting::from_values(n, values))?;
        let report = verify_ring_map(self, &target, |x| self.theta_apply(&inv, x));
        Ok(ScalingIso { target, inverse_rho: inv, report })
    }

    /// For `omega` a coboundary `delta^1 rho`: the composite
    /// `a_g d_g -> j(a_g rho(g) d_g)` into `End_{R^alpha}(R)`.
    pub fn splitting(&self, end: &EndRing) -> Result<Option<RingMapReport>> {
        let omega = Cochain::new(2, self.twisting.values().to_vec());
        let rho = match cohomology::coboundary_solve(&self.action, &omega)? {
            Some(rho) => rho,
            None => return Ok(None),
        };
        Ok(Some(verify_ring_map(self, end, |x| {
            j_endomorphism(&self.action, end, &self.theta_apply(&rho, x))
        })))
    }
}

impl FiniteAlgebra for CrossedRing {
    type Elem = CrossedElem;

    fn ambient(&self) -> FinAbGroup {
        self.layout.group().clone()
    }

    fn coords(&self, x: &CrossedElem) -> Vec<BigInt> {
        self.layout.coords(x)
    }

    fn from_coords(&self, v: &[BigInt]) -> CrossedElem {
        self.layout.from_coords(v)
    }

    fn additive_basis(&self) -> Vec<CrossedElem> {
        self.layout
            .basis()
            .into_iter()
            .map(|(g, j)| self.single(g, self.action.ring().basis(j)))
            .collect()
    }

    fn mul(&self, x: &CrossedElem, y: &CrossedElem) -> CrossedElem {
        self.product(x, y)
    }

    fn one(&self) -> CrossedElem {
        self.single(0, self.action.ring().one())
    }

    fn describe(&self, x: &CrossedElem) -> String {
        x.format(&self.action, "δ")
    }
}

/// The additive endomorphism `j(x)` of `R`.
pub fn j_endomorphism(a: &PartialAction, end: &EndRing, x: &CrossedElem) -> crate::galois::EndMatrix {
    let ring = a.ring();
    end.matrix_of(|r| {
        x.coeffs.iter().enumerate().fold(ring.zero(), |acc, (g, c)| {
            ring.add(&acc, &ring.mul(c, &a.apply_cut(g, r)))
        })
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct JMapReport {
    pub crossed_order: String,
    pub end_order: String,
    pub kernel_order: String,
    pub is_iso: bool,
    pub ring_map: RingMapReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaReport {
    pub multiplicative: bool,
    pub unital: bool,
    pub witness: Option<String>,
}

impl ThetaReport {
    pub fn passed(&self) -> bool {
        self.multiplicative && self.unital
    }
}

#[derive(Clone, Debug)]
pub struct ScalingIso {
    pub target: CrossedRing,
    pub inverse_rho: Cochain,
    pub report: RingMapReport,
}

/// `R_f`: the ring `R` with `(a d_g) . m = a f(g) alpha_g(m 1_{g^-1})`.
/// The identity cochain gives `R` with the action of `j`.
#[derive(Clone, Debug)]
pub struct RfModule {
    action: PartialAction,
    f: Cochain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleReport {
    pub associative: bool,
    pub unital: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuReport {
    pub tensor_order: String,
    pub module_order: String,
    pub fixed_order: String,
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
    pub linear: bool,
    pub witness: Option<String>,
}

impl MuReport {
    pub fn is_iso(&self) -> bool {
        self.well_defined && self.injective && self.surjective && self.linear
    }
}

impl RfModule {
    pub fn new(action: PartialAction, f: Cochain) -> Result<RfModule> {
        CochainGroup::new(&action, 1)?.check(&f)?;
        Ok(RfModule { action, f })
    }

    /// `R` itself.
    pub fn regular(action: PartialAction) -> RfModule {
        let f = CochainGroup::new(&action, 1).expect("degree 1").identity();
        RfModule { action, f }
    }

    pub fn cochain(&self) -> &Cochain {
        &self.f
    }

    pub fn act(&self, g: usize, a: &RingElem, m: &RingElem) -> RingElem {
        let ring = self.action.ring();
        ring.mul(&ring.mul(a, &self.f.values()[g]), &self.action.apply_cut(g, m))
    }

    pub fn act_elem(&self, x: &CrossedElem, m: &RingElem) -> RingElem {
        let ring = self.action.ring();
        x.coeffs
            .iter()
            .enumerate()
            .fold(ring.zero(), |acc, (g, a)| ring.add(&acc, &self.act(g, a, m)))
    }

    /// Module axioms over the untwisted crossed product, on basis elements.
    pub fn module_check(&self, a: &CrossedRing) -> ModuleReport {
        let ring = self.action.ring();
        let basis = a.additive_basis();
        let ms: Vec<RingElem> = (0..ring.len()).map(|j| ring.basis(j)).collect();
        let unital = ms.iter().all(|m| self.act_elem(&a.one(), m) == *m);
        for x in &basis {
            for y in &basis {
                let xy = a.product(x, y);
                for m in &ms {
                    let lhs = self.act_elem(&xy, m);
                    let rhs = self.act_elem(x, &self.act_elem(y, m));
                    if lhs != rhs {
                        return ModuleReport {
                            associative: false,
                            unital,
                            witness: Some(format!(
                                "({} * {}) . {m} = {lhs} but x . (y . m) = {rhs}",
                                a.describe(x),
                                a.describe(y)
                            )),
                        };
                    }
                }
            }
        }
        ModuleReport { associative: true, unital, witness: None }
    }

    /// `M^G = { m : (1_g d_g) m = 1_g m for all g }`.
    pub fn fixed_points(&self) -> SubringDescriptor {
        let ring = self.action.ring();
        let n = self.action.group().order();
        let add = ring.additive_group();
        let target = FinAbGroup::direct_sum(&vec![add.clone(); n]);
        let images: Vec<Vec<BigInt>> = (0..ring.len())
            .map(|j| {
                let m = ring.basis(j);
                (0..n)
                    .flat_map(|g| {
                        let one = self.action.one(g);
                        let v = ring.sub(&self.act(g, &one.to_elem(), &m), &ring.cut(&m, one));
                        ring.to_coords(&v)
                    })
                    .collect()
            })
            .collect();
        let hom = GroupHom::from_images(add, target, &images).expect("additive map");
        SubringDescriptor::new(ring.clone(), hom.kernel())
    }

    /// Some `m` in `M^G` with `R^alpha -> M^G, s -> s m` bijective.
    pub fn free_cyclic_generator(&self, invariants: &SubringDescriptor) -> Option<RingElem> {
        let fixed = self.fixed_points();
        if fixed.order() != invariants.order() {
            return None;
        }
        let ring = self.action.ring();
        let scalars = invariants.elements();
        let mut candidates = fixed.elements();
        candidates.sort();
        candidates.into_iter().find(|m| {
            let mut seen: Vec<RingElem> = scalars.iter().map(|s| ring.mul(s, m)).collect();
            seen.sort();
            seen.dedup();
            seen.len() == scalars.len()
        })
    }

    /// `mu: R (x)_{R^alpha} M^G -> M, x (x) m -> x m`, with the tensor product
    /// presented on generators `e_i (x) m_k`.
    pub fn mu_check(&self, invariants: &SubringDescriptor) -> MuReport {
        let ring = self.action.ring();
        let c = ring.len();
        let fixed = self.fixed_points();
        let fgens = fixed.generators();
        let forders: Vec<BigInt> = fixed.subgroup().invariant_factors().to_vec();
        let k = fgens.len();
        let idx = |i: usize, kk: usize| i * k + kk;
        let rank = c * k;
        let mut relations: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..c {
            for kk in 0..k {
                let mut v = vec![BigInt::from(0); rank];
                v[idx(i, kk)] = BigInt::from(ring.modulus(i));
                relations.push(v);
                let mut v = vec![BigInt::from(0); rank];
                v[idx(i, kk)] = forders[kk].clone();
                relations.push(v);
            }
        }
        let solver = fixed.subgroup().solver();
        for s in invariants.generators() {
            for (kk, m) in fgens.iter().enumerate() {
                let sm = ring.mul(&s, m);
                let coeffs = solver
                    .coefficients(&ring.to_coords(&sm))
                    .expect("M^G is an R^alpha-module");
                for i in 0..c {
                    let mut v = vec![BigInt::from(0); rank];
                    v[idx(i, kk)] += BigInt::from(s.0[i]);
                    for (kp, ck) in coeffs.iter().enumerate() {
                        v[idx(i, kp)] -= ck;
                    }
                    relations.push(v);
                }
            }
        }
        let rel = crate::abelian::IntMatrix::from_columns(rank, &relations);
        let tensor = if rank == 0 {
            FinAbGroup::trivial()
        } else {
            FinAbGroup::new(rank, rel).expect("tensor product of finite groups is finite")
        };
        let mut images = Vec::with_capacity(rank);
        for i in 0..c {
            for m in &fgens {
                images.push(ring.to_coords(&ring.mul(&ring.basis(i), m)));
            }
        }
        let module_order = ring.cardinality();
        let mut report = MuReport {
            tensor_order: tensor.order().to_string(),
            module_order: module_order.to_string(),
            fixed_order: fixed.order().to_string(),
            well_defined: false,
            injective: false,
            surjective: false,
            linear: false,
            witness: None,
        };
        let hom = match GroupHom::from_images(tensor, ring.additive_group(), &images) {
            Ok(h) => h,
            Err(e) => {
                report.witness = Some(e.to_string());
                return report;
            }
        };
        report.well_defined = true;
        report.injective = hom.is_injective();
        report.surjective = hom.image().order() == module_order;
        // (a d_g)((x (x) m)) = (a alpha_g(x 1_{g^-1})) (x) m must map to
        // (a d_g) . (x m)
        report.linear = true;
        'lin: for g in self.action.group().elements() {
            for jj in self.action.one(g).support() {
                let a = ring.basis(jj);
                for i in 0..c {
                    let x = ring.basis(i);
                    let moved = ring.mul(&a, &self.action.apply_cut(g, &x));
                    for m in &fgens {
                        let lhs = ring.mul(&moved, m);
                        let rhs = self.act(g, &a, &ring.mul(&x, m));
                        if lhs != rhs {
                            report.linear = false;
                            report.witness = Some(format!(
                                "mu((e{jj} d_{}) (e{i} (x) {m})) = {lhs} but the action gives {rhs}",
                                self.action.group().label(g)
                            ));
                            break 'lin;
                        }
                    }
                }
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn el(a: &PartialAction, v: &[i64]) -> RingElem {
        a.ring().elem(v).unwrap()
    }

    #[test]
    fn products() {
        let a = fixtures::fix_a();
        let cr = CrossedRing::untwisted(a.clone());
        let e0s = cr.single(1, el(&a, &[1, 0]));
        assert_eq!(cr.cp_mul(&e0s, &e0s).unwrap(), CrossedElem::zero(&a));
        let x = cr.single(1, el(&a, &[2, 1]));
        assert_eq!(cr.cp_mul(&cr.one(), &x).unwrap(), x);
        assert_eq!(cr.cp_mul(&x, &cr.one()).unwrap(), x);

        let tw = CrossedRing::new(a.clone(), fixtures::fix_a_twist([2, 2])).unwrap();
        let s = tw.single(1, a.ring().one());
        assert_eq!(tw.cp_mul(&s, &s).unwrap(), tw.single(0, el(&a, &[2, 2])));

        let b = fixtures::fix_b();
        let cb = CrossedRing::untwisted(b.clone());
        let bad = cb.single(1, el(&b, &[1, 0, 0]));
        assert!(matches!(cb.cp_mul(&bad, &cb.one()), Err(Error::Domain(_))));
    }

    #[test]
    fn associativity() {
        let b = fixtures::fix_b();
        assert!(CrossedRing::untwisted(b).associativity_check().associative);
        let a = fixtures::fix_a();
        let good = CrossedRing::new(a.clone(), fixtures::fix_a_twist([2, 2])).unwrap();
        assert!(good.associativity_check().associative);
        let bad = CrossedRing::new(a, fixtures::fix_a_twist([1, 2])).unwrap();
        let rep = bad.associativity_check();
        let w = rep.witness.unwrap();
        assert_eq!(w.tuple, vec!["g1", "g1", "g1"]);
        assert_eq!(w.left, "(1,2)δ_g1");
        assert_eq!(w.right, "(2,1)δ_g1");
    }

    #[test]
    fn bimodule() {
        let a = fixtures::fix_a();
        let cr = CrossedRing::untwisted(a.clone());
        let s = cr.single(1, a.ring().one());
        let r = el(&a, &[1, 2]);
        assert_eq!(cr.bimodule_act(Side::Right, &r, &s), cr.single(1, el(&a, &[2, 1])));
        assert_eq!(cr.bimodule_act(Side::Left, &r, &s), cr.single(1, r.clone()));
        assert_eq!(cr.bimodule_act(Side::Right, &a.ring().one(), &s), s);
    }

    #[test]
    fn center_and_centralizer() {
        let b = fixtures::fix_b();
        let twisted_a = CrossedRing::new(fixtures::fix_a(), fixtures::fix_a_twist([2, 2])).unwrap();
        for cr in [CrossedRing::untwisted(b), twisted_a] {
            let inv = cr.action().invariant_subring();
            assert!(cr.center().unwrap().same_as(&cr.degree_one(&inv)));
            let whole = SubringDescriptor::whole(cr.action().ring());
            assert!(cr.centralizer_of_r().unwrap().same_as(&cr.degree_one(&whole)));
        }
        let t = CrossedRing::untwisted(fixtures::trivial_group_on(&[3, 4]));
        assert_eq!(t.center().unwrap().order(), BigInt::from(12));
        assert_eq!(t.centralizer_of_r().unwrap().order(), BigInt::from(12));
    }

    #[test]
    fn theta() {
        let a = fixtures::fix_a();
        let cr = CrossedRing::untwisted(a.clone());
        let c1 = CochainGroup::new(&a, 1).unwrap();
        assert!(cr.theta_f(&c1.identity()).unwrap().passed());
        let f = Cochain::new(1, vec![a.ring().one(), el(&a, &[2, 2])]);
        assert!(cr.theta_f(&f).unwrap().passed());
        let s = cr.single(1, a.ring().one());
        assert_eq!(cr.theta_apply(&f, &s), cr.single(1, el(&a, &[2, 2])));
        let g = Cochain::new(1, vec![a.ring().one(), el(&a, &[1, 2])]);
        assert!(matches!(cr.theta_f(&g), Err(Error::NotACocycle { .. })));
        let rep = cr.theta_check(&g).unwrap();
        assert!(!rep.multiplicative && rep.witness.is_some());
    }

    #[test]
    fn scaling() {
        let a = fixtures::fix_a();
        let cr = CrossedRing::untwisted(a.clone());
        let c1 = CochainGroup::new(&a, 1).unwrap();
        let id = cr.cocycle_scaling_iso(&c1.identity()).unwrap();
        assert!(id.report.is_iso());
        assert!(id.target.twisting().is_trivial(&a));

        let rho = Cochain::new(1, vec![a.ring().one(), el(&a, &[1, 2])]);
        let sc = cr.cocycle_scaling_iso(&rho).unwrap();
        assert!(sc.report.is_iso());
        assert_eq!(*sc.target.twisting().get(1, 1), el(&a, &[2, 2]));
        let back = sc.target.cocycle_scaling_iso(&sc.inverse_rho).unwrap();
        assert!(back.target.twisting().is_trivial(&a));
        for x in cr.additive_basis() {
            let there = sc.target.theta_apply(&sc.inverse_rho, &x);
            assert_eq!(back.target.theta_apply(&back.inverse_rho, &there), x);
        }
    }

    #[test]
    fn fixed_points_and_mu() {
        let a = fixtures::fix_a();
        let inv = a.invariant_subring();
        let regular = RfModule::regular(a.clone());
        assert!(regular.fixed_points().subgroup().same_as(inv.subgroup()));
        assert!(regular.mu_check(&inv).is_iso());

        let f = Cochain::new(1, vec![a.ring().one(), el(&a, &[2, 2])]);
        let rf = RfModule::new(a.clone(), f).unwrap();
        let fixed = rf.fixed_points();
        assert_eq!(fixed.order(), BigInt::from(3));
        for m in fixed.elements() {
            assert_eq!(m.0[0], (2 * m.0[1]) % 3);
        }
        assert!(rf.free_cyclic_generator(&inv).is_some());
        let mu = rf.mu_check(&inv);
        assert!(mu.is_iso());
        assert_eq!(mu.tensor_order, "9");
        assert!(rf.module_check(&CrossedRing::untwisted(a)).associative);

        let t = fixtures::trivial_group_on(&[3, 3]);
        let inv_t = t.invariant_subring();
        assert!(RfModule::regular(t).mu_check(&inv_t).is_iso());

        let b = fixtures::fix_b();
        let inv_b = b.invariant_subring();
        let rb = RfModule::regular(b);
        assert!(rb.fixed_points().subgroup().same_as(inv_b.subgroup()));
        assert!(rb.mu_check(&inv_b).is_iso());
    }
}
