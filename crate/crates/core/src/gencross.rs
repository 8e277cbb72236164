//! Partial generalized crossed products `Delta = (+) J_g` with free
//! components `J_g = D_g u_g`, their factor sets, and the defect `omega_f`
//! of the coherence diagram.

use num_bigint::BigInt;
use rand::Rng;
use serde::Serialize;

use crate::abelian::{FinAbGroup, GroupHom, Subgroup};
use crate::algebra::{verify_ring_map, FiniteAlgebra, RingMapReport};
use crate::cohomology::{self, Cochain, CochainGroup};
use crate::crossed::{AssociativityReport, AssociativityWitness, CrossedElem, CrossedRing, GradedLayout};
use crate::error::{Error, Result};
use crate::finring::{Idem, RingElem};
use crate::paction::PartialAction;

/// A tensor factor: the free bimodule `J_g = D_g u_g` or the ideal `D_g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Slot {
    J(usize),
    D(usize),
}

/// `c (x_1 (x) ... (x) x_k)` where `x_i` is `u_g` for `J(g)` and `1_g` for
/// `D(g)`. Every scalar of a pure tensor can be moved to the far left, so
/// this is a normal form; `c` is kept cut to the annihilator complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    pub scalar: RingElem,
    pub slots: Vec<Slot>,
}

/// The maps of the coherence diagram, each acting on a window of adjacent
/// slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// `f_{g,h}: J_g (x) J_h -> D_g (x) J_gh`.
    F(usize, usize),
    FInv(usize, usize),
    /// `kappa_{g,h}: J_g (x) D_h -> D_gh (x) J_g`.
    Kappa(usize, usize),
    KappaInv(usize, usize),
    /// `D_a (x) D_b -> D_b (x) D_a`.
    Tau(usize, usize),
    /// Multiplication `D_g (x) J_x -> J_x`.
    M(usize, usize),
}

impl Step {
    fn source(&self, a: &PartialAction) -> Vec<Slot> {
        let grp = a.group();
        match *self {
            Step::F(g, h) => vec![Slot::J(g), Slot::J(h)],
            Step::FInv(g, h) => vec![Slot::D(g), Slot::J(grp.mul(g, h))],
            Step::Kappa(g, h) => vec![Slot::J(g), Slot::D(h)],
            Step::KappaInv(g, h) => vec![Slot::D(grp.mul(g, h)), Slot::J(g)],
            Step::Tau(x, y) => vec![Slot::D(x), Slot::D(y)],
            Step::M(g, x) => vec![Slot::D(g), Slot::J(x)],
        }
    }
}

#[derive(Clone, Debug)]
pub struct FreeFactorSet {
    action: PartialAction,
    omega: Cochain,
}

/// `u_g u_h = omega_{g,h} u_gh` from a normalized 2-cochain of units.
pub fn factor_set_from_cochain(a: &PartialAction, w: &Cochain) -> Result<FreeFactorSet> {
    if w.degree() != 2 {
        return Err(Error::Validation(format!("factor sets need a 2-cochain, got degree {}", w.degree())));
    }
    let c2 = CochainGroup::new(a, 2)?;
    c2.check(w)?;
    if !c2.is_normalized(w) {
        let grp = a.group();
        let t = c2
            .tuples()
            .iter()
            .zip(w.values())
            .find(|(t, v)| t.contains(&0) && **v != a.tuple_idem(t).to_elem())
            .map(|(t, _)| format!("({},{})", grp.label(t[0]), grp.label(t[1])))
            .unwrap_or_default();
        return Err(Error::Validation(format!("factor set is not normalized at {t}")));
    }
    Ok(FreeFactorSet { action: a.clone(), omega: w.clone() })
}

impl FreeFactorSet {
    pub fn trivial(a: &PartialAction) -> FreeFactorSet {
        let c2 = CochainGroup::new(a, 2).expect("degree 2 is below the cap");
        FreeFactorSet { action: a.clone(), omega: c2.identity() }
    }

    pub fn action(&self) -> &PartialAction {
        &self.action
    }

    pub fn cochain(&self) -> &Cochain {
        &self.omega
    }

    pub fn omega(&self, g: usize, h: usize) -> &RingElem {
        self.omega.value(self.action.group().order(), &[g, h])
    }

    /// `x c = pull(x, c) x` for the generator `x` of a slot.
    pub fn pull(&self, slot: Slot, c: &RingElem) -> RingElem {
        let a = &self.action;
        match slot {
            Slot::D(g) => a.ring().cut(c, a.one(g)),
            Slot::J(g) => a.apply_cut(g, c),
        }
    }

    fn pull_through(&self, slots: &[Slot], c: &RingElem) -> RingElem {
        slots.iter().rev().fold(c.clone(), |acc, s| self.pull(*s, &acc))
    }

    /// Idempotent `e` with `c x = 0` iff `c e = 0` for the generator `x`.
    pub fn support(&self, slots: &[Slot]) -> RingElem {
        self.pull_through(slots, &self.action.ring().one())
    }

    /// Normal form of `c_1 x_1 (x) ... (x) c_k x_k`.
    pub fn tensor(&self, factors: &[(RingElem, Slot)]) -> Tensor {
        let ring = self.action.ring();
        let mut acc = ring.one();
        for (c, s) in factors.iter().rev() {
            acc = ring.mul(c, &self.pull(*s, &acc));
        }
        let slots: Vec<Slot> = factors.iter().map(|(_, s)| *s).collect();
        self.normal(acc, slots)
    }

    pub fn generator(&self, slots: Vec<Slot>) -> Tensor {
        self.normal(self.action.ring().one(), slots)
    }

    fn normal(&self, scalar: RingElem, slots: Vec<Slot>) -> Tensor {
        let scalar = self.action.ring().mul(&scalar, &self.support(&slots));
        Tensor { scalar, slots }
    }

    pub fn left_act(&self, r: &RingElem, t: &Tensor) -> Tensor {
        self.normal(self.action.ring().mul(r, &t.scalar), t.slots.clone())
    }

    pub fn right_act(&self, t: &Tensor, r: &RingElem) -> Tensor {
        let c = self.pull_through(&t.slots, r);
        self.normal(self.action.ring().mul(&t.scalar, &c), t.slots.clone())
    }

    /// Image of the window generator under a step.
    fn step_image(&self, step: Step) -> Result<Tensor> {
        let a = &self.action;
        let ring = a.ring();
        let grp = a.group();
        Ok(match step {
            Step::F(g, h) => self.normal(self.omega(g, h).clone(), vec![Slot::D(g), Slot::J(grp.mul(g, h))]),
            Step::FInv(g, h) => {
                let e = a.tuple_idem(&[g, h]);
                let inv = ring.inverse_in_ideal(self.omega(g, h), &e)?;
                self.normal(inv, vec![Slot::J(g), Slot::J(h)])
            }
            Step::Kappa(g, h) => {
                let b = a.apply_cut(g, &a.one(h).to_elem());
                self.normal(b, vec![Slot::D(grp.mul(g, h)), Slot::J(g)])
            }
            Step::KappaInv(g, h) => {
                let gh = grp.mul(g, h);
                let d = a.apply_cut(grp.inv(g), &ring.mul(&a.one(gh).to_elem(), &a.one(g).to_elem()));
                self.tensor(&[(ring.one(), Slot::J(g)), (d, Slot::D(h))])
            }
            Step::Tau(x, y) => self.generator(vec![Slot::D(y), Slot::D(x)]),
            Step::M(g, x) => self.normal(a.one(g).to_elem(), vec![Slot::J(x)]),
        })
    }

    /// `id (x) step (x) id` with the window starting at `start`.
    pub fn apply(&self, t: &Tensor, start: usize, step: Step) -> Result<Tensor> {
        let src = step.source(&self.action);
        let end = start + src.len();
        if end > t.slots.len() || t.slots[start..end] != src[..] {
            return Err(Error::Domain(format!(
                "{step:?} expects {src:?} at position {start} of {:?}",
                t.slots
            )));
        }
        let img = self.step_image(step)?;
        let prefix = &t.slots[..start];
        let c = self.pull_through(prefix, &img.scalar);
        let mut slots = prefix.to_vec();
        slots.extend(&img.slots);
        slots.extend(&t.slots[end..]);
        Ok(self.normal(self.action.ring().mul(&t.scalar, &c), slots))
    }

    /// `kappa_{g,h}(a_g (x) b) = alpha_g(b 1_{g^-1}) (x) a_g` on a tensor in
    /// `J_g (x) D_h`.
    pub fn kappa(&self, g: usize, h: usize, t: &Tensor) -> Result<Tensor> {
        self.apply(t, 0, Step::Kappa(g, h))
    }

    /// The product `m_{g,h} f_{g,h}(a u_g (x) b u_h)`, as a coefficient of `u_gh`.
    pub fn product_coeff(&self, g: usize, x: &RingElem, h: usize, y: &RingElem) -> RingElem {
        let t = self.tensor(&[(x.clone(), Slot::J(g)), (y.clone(), Slot::J(h))]);
        let t = self.apply(&t, 0, Step::F(g, h)).expect("window J_g (x) J_h");
        let gh = self.action.group().mul(g, h);
        self.apply(&t, 0, Step::M(g, gh)).expect("window D_g (x) J_gh").scalar
    }

    /// `omega~(g,h,l)` on the generator of `D_g (x) D_gh (x) J_ghl`: the
    /// bottom path composed with the inverse of the top path.
    pub fn diagram_defect(&self, g: usize, h: usize, l: usize) -> Result<RingElem> {
        let grp = self.action.group();
        let gh = grp.mul(g, h);
        let hl = grp.mul(h, l);
        let ghl = grp.mul(gh, l);
        let z = self.generator(vec![Slot::D(g), Slot::D(gh), Slot::J(ghl)]);
        let mut t = self.apply(&z, 0, Step::Tau(g, gh))?;
        t = self.apply(&t, 1, Step::FInv(g, hl))?;
        t = self.apply(&t, 0, Step::KappaInv(g, h))?;
        t = self.apply(&t, 1, Step::FInv(h, l))?;
        t = self.apply(&t, 0, Step::F(g, h))?;
        t = self.apply(&t, 1, Step::F(gh, l))?;
        if t.slots != z.slots {
            return Err(Error::Domain(format!("diagram path ends in {:?}", t.slots)));
        }
        let e = self.action.tuple_idem(&[g, h, l]);
        if !self.action.ring().is_unit_in(&t.scalar, &e) {
            return Err(Error::Domain(format!(
                "ENGINE INCONSISTENCY: diagram defect {} is not a unit of {e}",
                t.scalar
            )));
        }
        Ok(t.scalar)
    }
}

/// `omega_f(g,h,l)` for every triple, read off the diagram.
pub fn omega_f_extract(fs: &FreeFactorSet) -> Result<Cochain> {
    let a = fs.action();
    let grp = a.group();
    let values = grp
        .tuples(3)
        .iter()
        .map(|t| fs.diagram_defect(t[0], t[1], t[2]))
        .collect::<Result<Vec<_>>>()?;
    Ok(Cochain::new(3, values))
}

/// `Delta = (+) D_g u_g` with `x y = m_{g,h} f_{g,h}(x (x) y)`.
#[derive(Clone, Debug)]
pub struct DeltaRing {
    fs: FreeFactorSet,
    layout: GradedLayout,
}

pub fn build_delta(fs: FreeFactorSet) -> DeltaRing {
    let layout = GradedLayout::new(fs.action());
    DeltaRing { fs, layout }
}

impl DeltaRing {
    pub fn factor_set(&self) -> &FreeFactorSet {
        &self.fs
    }

    pub fn action(&self) -> &PartialAction {
        &self.fs.action
    }

    /// `r u_g`.
    pub fn single(&self, g: usize, r: RingElem) -> CrossedElem {
        let r = self.action().ring().cut(&r, self.action().one(g));
        CrossedElem::single(self.action(), g, r)
    }

    pub fn product(&self, x: &CrossedElem, y: &CrossedElem) -> CrossedElem {
        let ring = self.action().ring();
        let grp = self.action().group();
        let mut out = CrossedElem::zero(self.action());
        for (g, r) in x.coeffs.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            for (h, t) in y.coeffs.iter().enumerate() {
                if t.is_zero() {
                    continue;
                }
                let gh = grp.mul(g, h);
                out.coeffs[gh] = ring.add(&out.coeffs[gh], &self.fs.product_coeff(g, r, h, t));
            }
        }
        out
    }

    pub fn left_act(&self, r: &RingElem, x: &CrossedElem) -> CrossedElem {
        let ring = self.action().ring();
        CrossedElem { coeffs: x.coeffs.iter().map(|c| ring.mul(r, c)).collect() }
    }

    /// `(c u_g) r = c alpha_g(r 1_{g^-1}) u_g`.
    pub fn right_act(&self, x: &CrossedElem, r: &RingElem) -> CrossedElem {
        let ring = self.action().ring();
        let coeffs = x
            .coeffs
            .iter()
            .enumerate()
            .map(|(g, c)| ring.mul(c, &self.fs.pull(Slot::J(g), r)))
            .collect();
        CrossedElem { coeffs }
    }

    /// `J_g` inside the coordinate group.
    pub fn component(&self, g: usize) -> Subgroup {
        let ring = self.action().ring();
        let gens: Vec<Vec<BigInt>> = self
            .action()
            .one(g)
            .support()
            .into_iter()
            .map(|j| self.coords(&self.single(g, ring.basis(j))))
            .collect();
        Subgroup::generated(&self.ambient(), &gens)
    }

    /// `{z : z r = alpha_h(r 1_{h^-1}) z for all r}`, solved over the
    /// coordinate basis `e_j u_g` with `r` running over `e_j`.
    pub fn twisted_commutant(&self, h: usize) -> Result<Subgroup> {
        let a = self.action();
        let ring = a.ring();
        let amb = self.ambient();
        let rs: Vec<RingElem> = (0..ring.len()).map(|j| ring.basis(j)).collect();
        let basis = self.additive_basis();
        let target = FinAbGroup::direct_sum(&vec![amb.clone(); rs.len()]);
        let images: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|z| {
                rs.iter()
                    .flat_map(|r| {
                        let lhs = self.right_act(z, r);
                        let rhs = self.left_act(&a.apply_cut(h, r), z);
                        self.coords(&self.sub(&lhs, &rhs))
                    })
                    .collect()
            })
            .collect();
        let hom = GroupHom::from_images(amb, target, &images)?;
        Ok(hom.kernel())
    }

    /// Exhaustive associativity over the basis triples `e_j u_g`.
    pub fn associativity_check(&self) -> AssociativityReport {
        let a = self.action();
        let grp = a.group();
        let ring = a.ring();
        let basis = self.layout.basis();
        let mut checked = 0;
        for &(g, i) in &basis {
            let x = ring.basis(i);
            for &(h, j) in &basis {
                let y = ring.basis(j);
                let xy = self.fs.product_coeff(g, &x, h, &y);
                let gh = grp.mul(g, h);
                for &(l, k) in &basis {
                    checked += 1;
                    let z = ring.basis(k);
                    let hl = grp.mul(h, l);
                    let left = self.fs.product_coeff(gh, &xy, l, &z);
                    let yz = self.fs.product_coeff(h, &y, l, &z);
                    let right = self.fs.product_coeff(g, &x, hl, &yz);
                    if left != right {
                        let ghl = grp.mul(gh, l);
                        let fmt = |v: RingElem| CrossedElem::single(a, ghl, v).format(a, "u");
                        return AssociativityReport {
                            associative: false,
                            triples_checked: checked,
                            witness: Some(AssociativityWitness {
                                tuple: [g, h, l].iter().map(|&t| grp.label(t).to_string()).collect(),
                                coefficients: vec![x.0.clone(), y.0.clone(), z.0.clone()],
                                left: fmt(left),
                                right: fmt(right),
                            }),
                        };
                    }
                }
            }
        }
        AssociativityReport { associative: true, triples_checked: checked, witness: None }
    }

    /// Solves `e x = x = x e` for `e` in `J_1`.
    pub fn locate_identity(&self) -> Result<Option<CrossedElem>> {
        let amb = self.ambient();
        let basis = self.additive_basis();
        let j1 = self.component(0);
        let target = FinAbGroup::direct_sum(&vec![amb.clone(); 2 * basis.len()]);
        let gens: Vec<CrossedElem> = j1.generators().iter().map(|v| self.from_coords(v)).collect();
        let images: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|e| {
                basis
                    .iter()
                    .flat_map(|b| {
                        let mut v = self.coords(&self.product(e, b));
                        v.extend(self.coords(&self.product(b, e)));
                        v
                    })
                    .collect()
            })
            .collect();
        let hom = GroupHom::from_images(j1.as_group(), target, &images)?;
        let rhs: Vec<BigInt> = basis
            .iter()
            .flat_map(|b| {
                let mut v = self.coords(b);
                v.extend(self.coords(b));
                v
            })
            .collect();
        Ok(hom.solve(&rhs).map(|c| self.from_coords(&j1.embedding().apply(&c))))
    }
}

impl FiniteAlgebra for DeltaRing {
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
        let ring = self.action().ring();
        self.layout.basis().into_iter().map(|(g, j)| self.single(g, ring.basis(j))).collect()
    }

    fn mul(&self, x: &CrossedElem, y: &CrossedElem) -> CrossedElem {
        self.product(x, y)
    }

    fn one(&self) -> CrossedElem {
        self.single(0, self.action().ring().one())
    }

    fn describe(&self, x: &CrossedElem) -> String {
        x.format(self.action(), "u")
    }
}

/// `J_1` with the identity located by [`DeltaRing::locate_identity`].
struct DegreeOne<'a> {
    delta: &'a DeltaRing,
    identity: CrossedElem,
}

impl FiniteAlgebra for DegreeOne<'_> {
    type Elem = CrossedElem;

    fn ambient(&self) -> FinAbGroup {
        self.delta.ambient()
    }

    fn carrier(&self) -> Subgroup {
        self.delta.component(0)
    }

    fn coords(&self, x: &CrossedElem) -> Vec<BigInt> {
        self.delta.coords(x)
    }

    fn from_coords(&self, v: &[BigInt]) -> CrossedElem {
        self.delta.from_coords(v)
    }

    fn mul(&self, x: &CrossedElem, y: &CrossedElem) -> CrossedElem {
        self.delta.product(x, y)
    }

    fn one(&self) -> CrossedElem {
        self.identity.clone()
    }

    fn describe(&self, x: &CrossedElem) -> String {
        self.delta.describe(x)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaReport {
    pub associativity: AssociativityReport,
    pub identity_in_j1: bool,
    pub identity: Option<String>,
    pub j1_iso_r: RingMapReport,
    pub components_characterized: bool,
    pub component_witness: Option<String>,
    pub twisted_bimodule: bool,
}

impl DeltaReport {
    pub fn passed(&self) -> bool {
        self.associativity.associative
            && self.identity_in_j1
            && self.j1_iso_r.is_iso()
            && self.components_characterized
            && self.twisted_bimodule
    }
}

pub fn delta_checks(d: &DeltaRing) -> Result<DeltaReport> {
    let a = d.action();
    let ring = a.ring();
    let associativity = d.associativity_check();
    let identity = d.locate_identity()?;
    let j1_iso_r = match &identity {
        Some(e) => {
            let j1 = DegreeOne { delta: d, identity: e.clone() };
            verify_ring_map(ring, &j1, |r| d.left_act(r, e))
        }
        None => RingMapReport {
            well_defined: false,
            injective: false,
            surjective: false,
            multiplicative: false,
            unital: false,
            source_order: ring.cardinality().to_string(),
            target_order: d.component(0).order().to_string(),
            witness: Some("no identity element in J_1".into()),
        },
    };
    let mut component_witness = None;
    for h in a.group().elements() {
        if !d.twisted_commutant(h)?.same_as(&d.component(h)) {
            component_witness = Some(format!(
                "{{z : z r = alpha_{}(r) z}} differs from J_{}",
                a.group().label(h),
                a.group().label(h)
            ));
            break;
        }
    }
    let twisted_bimodule = d.layout.basis().iter().all(|&(g, j)| {
        let x = d.single(g, ring.basis(j));
        (0..ring.len()).all(|k| {
            let r = ring.basis(k);
            d.left_act(&a.apply_cut(g, &r), &x) == d.product(&x, &d.single(0, r))
        })
    });
    Ok(DeltaReport {
        associativity,
        identity_in_j1: identity.is_some(),
        identity: identity.as_ref().map(|e| d.describe(e)),
        j1_iso_r,
        components_characterized: component_witness.is_none(),
        component_witness,
        twisted_bimodule,
    })
}

/// `a u_g -> a d_g` checked as a unital ring isomorphism.
pub fn example_cpp_iso(d: &DeltaRing, cp: &CrossedRing) -> RingMapReport {
    verify_ring_map(d, cp, |x| x.clone())
}

#[derive(Clone, Debug, Serialize)]
pub struct KappaReport {
    pub well_defined: bool,
    pub left_linear: bool,
    pub right_linear: bool,
    pub witness: Option<String>,
}

/// Checks that `kappa_{g,h}` is well defined on the normal form and
/// `R`-`R`-bilinear, with `r` running over `e_j` and unit generators.
pub fn kappa_check(fs: &FreeFactorSet) -> KappaReport {
    let a = fs.action();
    let ring = a.ring();
    let grp = a.group();
    let mut rs: Vec<RingElem> = (0..ring.len()).map(|j| ring.basis(j)).collect();
    let units = ring.unit_group(&Idem::full(ring.len()));
    rs.extend((0..units.rank()).map(|k| units.generator_elem(k)));
    let mut report = KappaReport { well_defined: true, left_linear: true, right_linear: true, witness: None };
    for g in grp.elements() {
        for h in grp.elements() {
            let src = vec![Slot::J(g), Slot::D(h)];
            let gen = fs.generator(src.clone());
            let img = fs.kappa(g, h, &gen).expect("source slots match");
            let killed = ring.sub(&ring.one(), &fs.support(&src));
            if !fs.left_act(&killed, &img).scalar.is_zero() {
                report.well_defined = false;
                report.witness = Some(format!("kappa_{},{} does not respect annihilators", grp.label(g), grp.label(h)));
                return report;
            }
            for r in &rs {
                for s in &rs {
                    let x = fs.tensor(&[(r.clone(), Slot::J(g)), (s.clone(), Slot::D(h))]);
                    let kx = fs.kappa(g, h, &x).expect("source slots match");
                    for t in &rs {
                        let l = fs.kappa(g, h, &fs.left_act(t, &x)).expect("source slots match");
                        if l != fs.left_act(t, &kx) {
                            report.left_linear = false;
                        }
                        let rr = fs.kappa(g, h, &fs.right_act(&x, t)).expect("source slots match");
                        if rr != fs.right_act(&kx, t) {
                            report.right_linear = false;
                        }
                        if !(report.left_linear && report.right_linear) {
                            report.witness = Some(format!(
                                "kappa_{},{} fails linearity at ({r} u, {s}), r = {t}",
                                grp.label(g),
                                grp.label(h)
                            ));
                            return report;
                        }
                    }
                }
            }
        }
    }
    report
}

/// The class of `J_g` in the partial-bijection model of `PicS`: the
/// component bijection from right supports to left supports.
pub type PartialBijection = Vec<Option<usize>>;

pub fn j_class(a: &PartialAction, g: usize) -> PartialBijection {
    a.map(g).to_vec()
}

pub fn compose(p: &PartialBijection, q: &PartialBijection) -> PartialBijection {
    q.iter().map(|x| x.and_then(|k| p[k])).collect()
}

fn d_class(a: &PartialAction, g: usize) -> PartialBijection {
    (0..a.ring().len()).map(|j| a.one(g).contains(j).then_some(j)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RepresentationReport {
    pub phi0_law: bool,
    pub axiom_i: bool,
    pub axiom_ii: bool,
    pub axiom_iii: bool,
    pub witness: Option<String>,
}

impl RepresentationReport {
    pub fn passed(&self) -> bool {
        self.phi0_law && self.axiom_i && self.axiom_ii && self.axiom_iii
    }
}

/// `[J_g][J_g^-1] = [D_g]` (realized as `u_g u_g^-1 in U(D_g) u_1`) and the
/// partial-representation axioms for `g -> [J_g]`.
pub fn representation_check(d: &DeltaRing) -> RepresentationReport {
    let a = d.action();
    let grp = a.group();
    let ring = a.ring();
    let n = grp.order();
    let cls: Vec<PartialBijection> = (0..n).map(|g| j_class(a, g)).collect();
    let mut rep = RepresentationReport { phi0_law: true, axiom_i: true, axiom_ii: true, axiom_iii: true, witness: None };
    for g in 0..n {
        let gi = grp.inv(g);
        let uu = d.product(&d.single(g, ring.one()), &d.single(gi, ring.one()));
        let in_j1 = uu.coeffs.iter().enumerate().all(|(k, c)| k == 0 || c.is_zero());
        if compose(&cls[g], &cls[gi]) != d_class(a, g) || !in_j1 || !ring.is_unit_in(&uu.coeffs[0], a.one(g)) {
            rep.phi0_law = false;
            rep.witness.get_or_insert(format!("u_{} u_g^-1 = {}", grp.label(g), d.describe(&uu)));
        }
    }
    for g in 0..n {
        let gi = grp.inv(g);
        for h in 0..n {
            let hi = grp.inv(h);
            let gh = grp.mul(g, h);
            let l = compose(&cls[gi], &compose(&cls[g], &cls[h]));
            let r = compose(&cls[gi], &cls[gh]);
            if l != r {
                rep.axiom_i = false;
                rep.witness.get_or_insert(format!("(i) fails at g={}, h={}", grp.label(g), grp.label(h)));
            }
            let l = compose(&compose(&cls[g], &cls[h]), &cls[hi]);
            let r = compose(&cls[gh], &cls[hi]);
            if l != r {
                rep.axiom_ii = false;
                rep.witness.get_or_insert(format!("(ii) fails at g={}, h={}", grp.label(g), grp.label(h)));
            }
        }
    }
    let identity: PartialBijection = (0..ring.len()).map(Some).collect();
    if cls[0] != identity {
        rep.axiom_iii = false;
        rep.witness.get_or_insert("[J_1] is not [R]".into());
    }
    rep
}

#[derive(Clone, Debug, Serialize)]
pub struct PanelEntry {
    pub cocycle: bool,
    pub associative: bool,
    pub omega_f_trivial: bool,
    pub omega_f_in_z3: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PanelReport {
    pub cocycles: usize,
    pub perturbed: usize,
    pub agree: bool,
    pub omega_f_always_cocycle: bool,
    pub entries: Vec<PanelEntry>,
}

/// Normalized 2-cocycles `delta^1 rho` and single-entry perturbations of
/// them that are no longer cocycles.
pub fn factor_set_panel<R: Rng>(
    a: &PartialAction,
    cocycles: usize,
    perturbed: usize,
    rng: &mut R,
) -> Result<(Vec<FreeFactorSet>, Vec<FreeFactorSet>)> {
    let c1 = CochainGroup::new(a, 1)?;
    let c2 = CochainGroup::new(a, 2)?;
    let grp = a.group();
    let n = grp.order();
    let normalized_rho = |rng: &mut R| {
        let mut rho = c1.random(rng);
        rho.set(n, &[0], a.one(0).to_elem());
        rho
    };
    let mut good = vec![FreeFactorSet::trivial(a)];
    while good.len() < cocycles {
        let w = cohomology::coboundary(a, &normalized_rho(rng))?;
        good.push(factor_set_from_cochain(a, &w)?);
    }
    let spots: Vec<(Vec<usize>, usize)> = c2
        .tuples()
        .iter()
        .enumerate()
        .filter(|(k, t)| !t.contains(&0) && c2.unit_group(*k).rank() > 0)
        .map(|(k, t)| (t.clone(), k))
        .collect();
    let mut bad = Vec::new();
    let mut attempts = 0;
    while bad.len() < perturbed && !spots.is_empty() && attempts < 100 * perturbed.max(1) {
        attempts += 1;
        let base = &good[rng.gen_range(0..good.len())];
        let (t, k) = &spots[rng.gen_range(0..spots.len())];
        let u = c2.unit_group(*k);
        let e: Vec<i64> = u.generators().iter().map(|g| rng.gen_range(0..g.order) as i64).collect();
        let unit = u.exp(&e);
        if unit == u.identity() {
            continue;
        }
        let mut w = base.cochain().clone();
        let v = a.ring().mul(w.value(n, t), &unit);
        w.set(n, t, v);
        if !cohomology::is_cocycle(a, &w)? {
            bad.push(factor_set_from_cochain(a, &w)?);
        }
    }
    Ok((good, bad))
}

pub fn panel_entry(fs: &FreeFactorSet) -> Result<PanelEntry> {
    let a = fs.action();
    let wf = omega_f_extract(fs)?;
    let c3 = CochainGroup::new(a, 3)?;
    Ok(PanelEntry {
        cocycle: cohomology::is_cocycle(a, fs.cochain())?,
        associative: build_delta(fs.clone()).associativity_check().associative,
        omega_f_trivial: wf == c3.identity(),
        omega_f_in_z3: cohomology::is_cocycle(a, &wf)?,
    })
}

pub fn panel_report(good: &[FreeFactorSet], bad: &[FreeFactorSet]) -> Result<PanelReport> {
    use rayon::prelude::*;
    let entries = good
        .par_iter()
        .chain(bad.par_iter())
        .map(panel_entry)
        .collect::<Result<Vec<_>>>()?;
    let agree = entries.iter().all(|e| e.associative == e.omega_f_trivial && e.cocycle == e.omega_f_trivial);
    Ok(PanelReport {
        cocycles: good.len(),
        perturbed: bad.len(),
        agree,
        omega_f_always_cocycle: entries.iter().all(|e| e.omega_f_in_z3),
        entries,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GencrossReport {
    pub associative: bool,
    pub omega_f_trivial: bool,
    pub omega_f_in_z3: bool,
    pub j1_iso_r: bool,
    pub identity_in_j1: bool,
    pub components_characterized: bool,
    pub kappa_bilinear: bool,
    pub representation: RepresentationReport,
    pub crossed_product_iso: bool,
    pub delta: DeltaReport,
    pub omega_f: Vec<cohomology::TupleValue>,
}

impl GencrossReport {
    /// Coherence holds exactly when the product is associative.
    pub fn consistent(&self) -> bool {
        self.associative == self.omega_f_trivial
            && self.omega_f_in_z3
            && self.j1_iso_r
            && self.identity_in_j1
            && self.components_characterized
            && self.kappa_bilinear
            && self.representation.passed()
    }
}

pub fn gencross_report(fs: &FreeFactorSet) -> Result<GencrossReport> {
    let a = fs.action();
    let wf = omega_f_extract(fs)?;
    let c3 = CochainGroup::new(a, 3)?;
    let d = build_delta(fs.clone());
    let delta = delta_checks(&d)?;
    let twisting = crate::paction::Twisting::from_values(a.group().order(), fs.cochain().values().to_vec());
    let crossed_product_iso = match CrossedRing::new(a.clone(), twisting) {
        Ok(cp) => example_cpp_iso(&d, &cp).is_iso(),
        Err(_) => false,
    };
    Ok(GencrossReport {
        associative: delta.associativity.associative,
        omega_f_trivial: wf == c3.identity(),
        omega_f_in_z3: cohomology::is_cocycle(a, &wf)?,
        j1_iso_r: delta.j1_iso_r.is_iso(),
        identity_in_j1: delta.identity_in_j1,
        components_characterized: delta.components_characterized,
        kappa_bilinear: {
            let k = kappa_check(fs);
            k.well_defined && k.left_linear && k.right_linear
        },
        representation: representation_check(&d),
        crossed_product_iso,
        omega_f: c3.listing(a, &wf),
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fix_a_fs(w: [i64; 2]) -> FreeFactorSet {
        let a = fixtures::fix_a();
        let mut c = CochainGroup::new(&a, 2).unwrap().identity();
        c.set(2, &[1, 1], a.ring().elem(&w).unwrap());
        factor_set_from_cochain(&a, &c).unwrap()
    }

    #[test]
    fn construction() {
        let a = fixtures::fix_a();
        let fs = fix_a_fs([2, 2]);
        assert_eq!(fs.omega(1, 1).0, vec![2, 2]);
        let mut c = CochainGroup::new(&a, 2).unwrap().identity();
        c.set(2, &[1, 1], a.ring().elem(&[0, 1]).unwrap());
        assert!(factor_set_from_cochain(&a, &c).is_err());
        let mut c = CochainGroup::new(&a, 2).unwrap().identity();
        c.set(2, &[0, 1], a.ring().elem(&[2, 2]).unwrap());
        assert!(factor_set_from_cochain(&a, &c).is_err());
    }

    #[test]
    fn products() {
        let b = fixtures::fix_b();
        let d = build_delta(FreeFactorSet::trivial(&b));
        let ring = b.ring();
        let uu = d.product(&d.single(1, ring.one()), &d.single(3, ring.one()));
        assert_eq!(uu, d.single(0, b.one(1).to_elem()));
        for x in d.additive_basis() {
            assert_eq!(d.product(&d.one(), &x), x);
            assert_eq!(d.product(&x, &d.one()), x);
        }
        let da = build_delta(fix_a_fs([2, 2]));
        let s = da.single(1, fixtures::fix_a().ring().one());
        assert_eq!(da.product(&s, &s), da.single(0, fixtures::fix_a().ring().elem(&[2, 2]).unwrap()));
    }

    #[test]
    fn kappa_rules() {
        let b = fixtures::fix_b();
        let fs = FreeFactorSet::trivial(&b);
        let ring = b.ring();
        let e1 = ring.basis(1);
        let t = fs.tensor(&[(ring.one(), Slot::J(1)), (e1, Slot::D(3))]);
        let k = fs.kappa(1, 3, &t).unwrap();
        assert_eq!(k.slots, vec![Slot::D(0), Slot::J(1)]);
        assert_eq!(k.scalar, ring.basis(2));
        let t = fs.generator(vec![Slot::J(1), Slot::D(0)]);
        let k = fs.kappa(1, 0, &t).unwrap();
        assert_eq!(k, fs.generator(vec![Slot::D(1), Slot::J(1)]));
        for g in 0..4 {
            for h in 0..4 {
                let k = fs.kappa(g, h, &fs.generator(vec![Slot::J(g), Slot::D(h)])).unwrap();
                let e = b.one(g).meet(b.one(b.group().mul(g, h)));
                assert_eq!(k.scalar, e.to_elem());
            }
        }
        let rep = kappa_check(&fs);
        assert!(rep.well_defined && rep.left_linear && rep.right_linear, "{rep:?}");
        assert!(fs.kappa(1, 1, &fs.generator(vec![Slot::D(1), Slot::J(1)])).is_err());
    }

    #[test]
    fn defects() {
        let a = fixtures::fix_a();
        let c3 = CochainGroup::new(&a, 3).unwrap();
        assert_eq!(omega_f_extract(&fix_a_fs([2, 2])).unwrap(), c3.identity());
        let bad = fix_a_fs([1, 2]);
        let wf = omega_f_extract(&bad).unwrap();
        assert_ne!(wf, c3.identity());
        let d2 = cohomology::coboundary(&a, bad.cochain()).unwrap();
        assert_eq!(c3.mul(&a, &wf, &d2), c3.identity());
        assert!(!build_delta(bad).associativity_check().associative);
    }

    #[test]
    fn checks_on_fixtures() {
        let b = fixtures::fix_b();
        let rep = gencross_report(&FreeFactorSet::trivial(&b)).unwrap();
        assert!(rep.associative && rep.omega_f_trivial && rep.consistent(), "{rep:?}");
        assert!(rep.crossed_product_iso);
        let rep = gencross_report(&fix_a_fs([2, 2])).unwrap();
        assert!(rep.associative && rep.consistent() && rep.crossed_product_iso);
        let rep = gencross_report(&fix_a_fs([1, 2])).unwrap();
        assert!(!rep.associative && !rep.omega_f_trivial && rep.consistent());
        assert!(rep.delta.associativity.witness.is_some());
    }

    #[test]
    fn mismatched_iso() {
        let a = fixtures::fix_a();
        let d = build_delta(fix_a_fs([2, 2]));
        let cp = CrossedRing::untwisted(a);
        let rep = example_cpp_iso(&d, &cp);
        assert!(!rep.multiplicative && rep.witness.is_some());
    }

    #[test]
    fn panel() {
        let b = fixtures::fix_b();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (good, bad) = factor_set_panel(&b, 10, 10, &mut rng).unwrap();
        assert_eq!((good.len(), bad.len()), (10, 10));
        let rep = panel_report(&good, &bad).unwrap();
        assert!(rep.agree && rep.omega_f_always_cocycle);
    }
}
