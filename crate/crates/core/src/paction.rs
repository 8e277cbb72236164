//! Unital (twisted) partial actions of a finite group on a product of local
//! rings.
//!
//! Ring automorphisms of `Z/p^k` are trivial, so a ring isomorphism
//! `D_{g^-1} -> D_g` between idempotent ideals is exactly a bijection of
//! supports matching the component moduli. That bijection is all we store.

use std::collections::VecDeque;

use num_bigint::BigInt;
use serde::Serialize;

use crate::abelian::{FinAbGroup, GroupHom, Subgroup};
use crate::error::{Error, Result};
use crate::finring::{Idem, Ring, RingElem};
use crate::group::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    fn push(&mut self, axiom: &str, witness: Option<String>) {
        self.checks.push(AxiomCheck { axiom: axiom.into(), passed: witness.is_none(), witness });
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAction {
    ring: Ring,
    group: FiniteGroup,
    ones: Vec<Idem>,
    /// `maps[g][j]` is the image of component `j` under `alpha_g`, defined
    /// exactly for `j` in the support of `1_{g^-1}`.
    maps: Vec<Vec<Option<usize>>>,
}

impl PartialAction {
    /// Structural checks only: every `pi_g` is a modulus-preserving bijection
    /// `supp(1_{g^-1}) -> supp(1_g)`. Axioms are checked by [`Self::validate`].
    pub fn new(
        ring: Ring,
        group: FiniteGroup,
        ones: Vec<Idem>,
        maps: Vec<Vec<Option<usize>>>,
    ) -> Result<PartialAction> {
        let n = group.order();
        let c = ring.len();
        if ones.len() != n || maps.len() != n {
            return Err(Error::Validation(format!(
                "expected {n} supports and maps, got {} and {}",
                ones.len(),
                maps.len()
            )));
        }
        for g in 0..n {
            if ones[g].0.len() != c || maps[g].len() != c {
                return Err(Error::Arity { expected: c, got: ones[g].0.len().min(maps[g].len()) });
            }
        }
        for g in 0..n {
            let dom = &ones[group.inv(g)];
            let mut hit = vec![false; c];
            for j in 0..c {
                match (dom.contains(j), maps[g][j]) {
                    (true, Some(t)) => {
                        if t >= c || !ones[g].contains(t) {
                            return Err(Error::Validation(format!(
                                "{}: component {j} maps to {t}, outside D_{}",
                                group.label(g),
                                group.label(g)
                            )));
                        }
                        if hit[t] {
                            return Err(Error::Validation(format!(
                                "{}: map is not injective at target {t}",
                                group.label(g)
                            )));
                        }
                        if ring.modulus(j) != ring.modulus(t) {
                            return Err(Error::Validation(format!(
                                "{}: component {j} (mod {}) cannot map to component {t} (mod {})",
                                group.label(g),
                                ring.modulus(j),
                                ring.modulus(t)
                            )));
                        }
                        hit[t] = true;
                    }
                    (true, None) => {
                        return Err(Error::Validation(format!(
                            "{}: map undefined at component {j} of D_{}^-1",
                            group.label(g),
                            group.label(g)
                        )))
                    }
                    (false, Some(_)) => {
                        return Err(Error::Validation(format!(
                            "{}: map defined at component {j} outside D_{}^-1",
                            group.label(g),
                            group.label(g)
                        )))
                    }
                    (false, None) => {}
                }
            }
            if hit.iter().zip(&ones[g].0).any(|(h, s)| h != s) {
                return Err(Error::Validation(format!(
                    "{}: map is not onto D_{}",
                    group.label(g),
                    group.label(g)
                )));
            }
        }
        Ok(PartialAction { ring, group, ones, maps })
    }

    /// A global action given by one component permutation per group element
    /// (`perms[g][j]` = image of component `j`). Must be a homomorphism.
    pub fn global(ring: Ring, group: FiniteGroup, perms: Vec<Vec<usize>>) -> Result<PartialAction> {
        let n = group.order();
        let c = ring.len();
        if perms.len() != n {
            return Err(Error::Validation(format!("expected {n} permutations")));
        }
        for g in 0..n {
            for h in 0..n {
                let gh = group.mul(g, h);
                for j in 0..c {
                    if perms[g][perms[h][j]] != perms[gh][j] {
                        return Err(Error::Validation(format!(
                            "global action is not a homomorphism at ({},{})",
                            group.label(g),
                            group.label(h)
                        )));
                    }
                }
            }
        }
        let ones = vec![Idem::full(c); n];
        let maps = perms.into_iter().map(|p| p.into_iter().map(Some).collect()).collect();
        PartialAction::new(ring, group, ones, maps)
    }

    /// Extends permutations of the group's generators to a global action.
    pub fn global_from_generators(
        ring: Ring,
        group: FiniteGroup,
        gen_perms: Vec<Vec<usize>>,
    ) -> Result<PartialAction> {
        let gens = group.generators().to_vec();
        if gen_perms.len() != gens.len() {
            return Err(Error::Validation(format!(
                "expected {} generator permutations, got {}",
                gens.len(),
                gen_perms.len()
            )));
        }
        let c = ring.len();
        for p in &gen_perms {
            let mut seen = vec![false; c];
            if p.len() != c || p.iter().any(|&x| x >= c || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::Validation(format!("{p:?} is not a permutation of {c} components")));
            }
        }
        let n = group.order();
        let mut perms: Vec<Option<Vec<usize>>> = vec![None; n];
        perms[0] = Some((0..c).collect());
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for (k, &s) in gens.iter().enumerate() {
                let xs = group.mul(x, s);
                let px = perms[x].clone().unwrap();
                let composed: Vec<usize> = (0..c).map(|j| px[gen_perms[k][j]]).collect();
                match &perms[xs] {
                    Some(existing) if *existing != composed => {
                        return Err(Error::Validation(format!(
                            "generator permutations do not respect the group relations at {}",
                            group.label(xs)
                        )))
                    }
                    Some(_) => {}
                    None => {
                        perms[xs] = Some(composed);
                        queue.push_back(xs);
                    }
                }
            }
        }
        let perms: Vec<Vec<usize>> = perms.into_iter().map(|p| p.expect("generators span")).collect();
        PartialAction::global(ring, group, perms)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// `1_g`.
    pub fn one(&self, g: usize) -> &Idem {
        &self.ones[g]
    }

    pub fn ones(&self) -> &[Idem] {
        &self.ones
    }

    pub fn map(&self, g: usize) -> &[Option<usize>] {
        &self.maps[g]
    }

    pub fn is_global(&self) -> bool {
        self.ones.iter().all(|e| e.0.iter().all(|&s| s))
    }

    /// `1_{g1} 1_{g1 g2} ... 1_{g1...gn}`; the full idempotent for `n = 0`.
    pub fn tuple_idem(&self, tuple: &[usize]) -> Idem {
        let mut e = Idem::full(self.ring.len());
        let mut acc = 0;
        for &g in tuple {
            acc = self.group.mul(acc, g);
            e = e.meet(&self.ones[acc]);
        }
        e
    }

    /// `alpha_g(x)` for `x` in `D_{g^-1}`.
    pub fn apply(&self, g: usize, x: &RingElem) -> Result<RingElem> {
        self.ring.check(x)?;
        let dom = &self.ones[self.group.inv(g)];
        if !x.lies_in(dom) {
            return Err(Error::Domain(format!(
                "{x} is not in D_{}^-1",
                self.group.label(g)
            )));
        }
        Ok(self.apply_cut(g, x))
    }

    /// `alpha_g(x 1_{g^-1})`.
    pub fn apply_cut(&self, g: usize, x: &RingElem) -> RingElem {
        let mut out = vec![0; self.ring.len()];
        for (j, t) in self.maps[g].iter().enumerate() {
            if let Some(t) = t {
                out[*t] = x.0[j];
            }
        }
        RingElem(out)
    }

    /// Image of an idempotent under `alpha_g` (after cutting to `D_{g^-1}`).
    pub fn apply_idem(&self, g: usize, e: &Idem) -> Idem {
        let mut out = vec![false; self.ring.len()];
        for (j, t) in self.maps[g].iter().enumerate() {
            if let Some(t) = t {
                out[*t] = e.0[j];
            }
        }
        Idem(out)
    }

    /// Restriction of a global action to the ideal `Re`: `D_g = e beta_g(e)`.
    pub fn restrict_global(&self, e: &Idem) -> Result<PartialAction> {
        if !self.is_global() {
            return Err(Error::Validation("restriction requires a global action".into()));
        }
        if e.0.len() != self.ring.len() {
            return Err(Error::Arity { expected: self.ring.len(), got: e.0.len() });
        }
        if e.is_zero() {
            return Err(Error::Validation(
                "restriction to the zero idempotent gives the zero ring".into(),
            ));
        }
        let ring = self.ring.restrict(e)?;
        let kept = e.support();
        let mut new_index = vec![None; self.ring.len()];
        for (k, &j) in kept.iter().enumerate() {
            new_index[j] = Some(k);
        }
        let n = self.group.order();
        let mut ones = Vec::with_capacity(n);
        let mut maps = Vec::with_capacity(n);
        for g in 0..n {
            let moved = self.apply_idem(g, e);
            let d_g = e.meet(&moved);
            ones.push(Idem(kept.iter().map(|&j| d_g.0[j]).collect()));
        }
        for g in 0..n {
            let dom = &ones[self.group.inv(g)];
            let m: Vec<Option<usize>> = kept
                .iter()
                .enumerate()
                .map(|(k, &j)| {
                    if dom.contains(k) {
                        self.maps[g][j].and_then(|t| new_index[t])
                    } else {
                        None
                    }
                })
                .collect();
            maps.push(m);
        }
        PartialAction::new(ring, self.group.clone(), ones, maps)
    }

    /// Axioms (i)-(iii) of a unital partial action and the composition law
    /// `alpha_g(alpha_h(y 1_{h^-1}) 1_{g^-1}) = alpha_gh(y 1_{(gh)^-1}) 1_g`.
    pub fn validate(&self) -> ValidationReport {
        let g = &self.group;
        let n = g.order();
        let c = self.ring.len();
        let mut report = ValidationReport::default();

        let mut w = None;
        if self.ones[0] != Idem::full(c) {
            w = Some("D_g0 is not the whole ring".to_string());
        } else if (0..c).any(|j| self.maps[0][j] != Some(j)) {
            w = Some("alpha_g0 is not the identity".to_string());
        }
        report.push("(i)", w);

        let mut w = None;
        'ii: for a in 0..n {
            for b in 0..n {
                let src = self.ones[g.inv(a)].meet(&self.ones[b]);
                let lhs = self.apply_idem(a, &src);
                let rhs = self.ones[a].meet(&self.ones[g.mul(a, b)]);
                if lhs != rhs {
                    w = Some(format!(
                        "g={}, h={}: alpha_g(D_g^-1 D_h) = {} but D_g D_gh = {}",
                        g.label(a),
                        g.label(b),
                        lhs,
                        rhs
                    ));
                    break 'ii;
                }
            }
        }
        report.push("(ii)", w);

        let mut w = None;
        'iii: for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                let dom = self.ones[g.inv(b)].meet(&self.ones[g.inv(ab)]);
                for j in dom.support() {
                    let via = self.maps[b][j].and_then(|k| self.maps[a][k]);
                    let direct = self.maps[ab][j];
                    if via != direct {
                        w = Some(format!(
                            "g={}, h={}, component {j}: alpha_g(alpha_h) gives {} but alpha_gh gives {}",
                            g.label(a),
                            g.label(b),
                            via.map_or("undefined".to_string(), |x| x.to_string()),
                            direct.map_or("undefined".to_string(), |x| x.to_string()),
                        ));
                        break 'iii;
                    }
                }
            }
        }
        report.push("(iii)", w);

        let mut w = None;
        'prod: for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                for j in 0..c {
                    let y = self.ring.basis(j);
                    let inner = self.apply_cut(b, &y);
                    let lhs = self.apply_cut(a, &inner);
                    let rhs = self.ring.cut(&self.apply_cut(ab, &y), &self.ones[a]);
                    if lhs != rhs {
                        w = Some(format!(
                            "g={}, h={}, y=e{j}: {} != {}",
                            g.label(a),
                            g.label(b),
                            lhs,
                            rhs
                        ));
                        break 'prod;
                    }
                }
            }
        }
        report.push("prodp", w);
        report
    }

    /// Additive endomorphism of `R` as the matrix of a map `R -> R`.
    fn ring_images(&self, f: impl Fn(&RingElem) -> RingElem) -> Vec<Vec<BigInt>> {
        (0..self.ring.len()).map(|j| self.ring.to_coords(&f(&self.ring.basis(j)))).collect()
    }

    /// `R^alpha = { r : alpha_g(r 1_{g^-1}) = r 1_g for all g }`.
    pub fn invariant_subring(&self) -> SubringDescriptor {
        let n = self.group.order();
        let add = self.ring.additive_group();
        let target = FinAbGroup::direct_sum(&vec![add.clone(); n]);
        let per_g: Vec<Vec<Vec<BigInt>>> = (0..n)
            .map(|g| {
                self.ring_images(|r| {
                    self.ring.sub(&self.apply_cut(g, r), &self.ring.cut(r, &self.ones[g]))
                })
            })
            .collect();
        let images: Vec<Vec<BigInt>> = (0..self.ring.len())
            .map(|j| per_g.iter().flat_map(|imgs| imgs[j].clone()).collect())
            .collect();
        let hom = GroupHom::from_images(add, target, &images).expect("additive map");
        SubringDescriptor::new(self.ring.clone(), hom.kernel())
    }

    /// Is `r` fixed: `alpha_g(r 1_{g^-1}) = r 1_g` for all `g`.
    pub fn is_invariant(&self, r: &RingElem) -> bool {
        self.group
            .elements()
            .all(|g| self.apply_cut(g, r) == self.ring.cut(r, &self.ones[g]))
    }

    /// `sum_g alpha_g(r 1_{g^-1})`.
    pub fn trace(&self, r: &RingElem) -> RingElem {
        self.group
            .elements()
            .fold(self.ring.zero(), |acc, g| self.ring.add(&acc, &self.apply_cut(g, r)))
    }
}

/// An additive subgroup of `R` closed under multiplication.
#[derive(Clone, Debug)]
pub struct SubringDescriptor {
    ring: Ring,
    subgroup: Subgroup,
}

impl SubringDescriptor {
    pub fn new(ring: Ring, subgroup: Subgroup) -> SubringDescriptor {
        SubringDescriptor { ring, subgroup }
    }

    pub fn whole(ring: &Ring) -> SubringDescriptor {
        SubringDescriptor::new(ring.clone(), Subgroup::whole(&ring.additive_group()))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn order(&self) -> BigInt {
        self.subgroup.order()
    }

    /// Additive generators.
    pub fn generators(&self) -> Vec<RingElem> {
        self.subgroup.generators().iter().map(|v| self.ring.from_coords(v)).collect()
    }

    pub fn contains(&self, x: &RingElem) -> bool {
        self.subgroup.contains(&self.ring.to_coords(x))
    }

    pub fn elements(&self) -> Vec<RingElem> {
        self.subgroup.elements().iter().map(|v| self.ring.from_coords(v)).collect()
    }

    /// Idempotents of `R` lying in the subring.
    pub fn idempotents(&self) -> Vec<Idem> {
        let solver = self.subgroup.solver();
        self.ring
            .idempotents()
            .into_iter()
            .filter(|e| solver.coefficients(&self.ring.to_coords(&e.to_elem())).is_some())
            .collect()
    }

    /// Closed under products of generators and contains `1_R`.
    pub fn is_subring(&self) -> bool {
        let gens = self.generators();
        let solver = self.subgroup.solver();
        let inside = |x: &RingElem| solver.coefficients(&self.ring.to_coords(x)).is_some();
        inside(&self.ring.one())
            && gens.iter().all(|a| gens.iter().all(|b| inside(&self.ring.mul(a, b))))
    }
}

/// A twisting `omega`, stored as an `n x n` table of ring elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twisting {
    n: usize,
    values: Vec<RingElem>,
}

impl Twisting {
    /// `omega_{g,h} = 1_g 1_gh`.
    pub fn trivial(a: &PartialAction) -> Twisting {
        let n = a.group().order();
        let values = (0..n * n).map(|k| a.tuple_idem(&[k / n, k % n]).to_elem()).collect();
        Twisting { n, values }
    }

    /// Trivial twisting overridden at the given `(g, h)` entries.
    pub fn with_entries(a: &PartialAction, entries: &[(usize, usize, RingElem)]) -> Result<Twisting> {
        let mut t = Twisting::trivial(a);
        for (g, h, v) in entries {
            if *g >= t.n || *h >= t.n {
                return Err(Error::Input(format!("twist entry ({g},{h}) out of range")));
            }
            a.ring().check(v)?;
            t.values[g * t.n + h] = v.clone();
        }
        Ok(t)
    }

    pub fn from_values(n: usize, values: Vec<RingElem>) -> Twisting {
        assert_eq!(values.len(), n * n);
        Twisting { n, values }
    }

    pub fn get(&self, g: usize, h: usize) -> &RingElem {
        &self.values[g * self.n + h]
    }

    pub fn values(&self) -> &[RingElem] {
        &self.values
    }

    pub fn is_trivial(&self, a: &PartialAction) -> bool {
        *self == Twisting::trivial(a)
    }

    /// Unit membership, normalisation (iv), the cocycle identity (v), and the
    /// derived identity `alpha_g(omega_{g^-1,g}) = omega_{g,g^-1}`.
    pub fn validate(&self, a: &PartialAction) -> ValidationReport {
        let ring = a.ring();
        let g = a.group();
        let n = g.order();
        let mut report = ValidationReport::default();

        let mut w = None;
        'units: for x in 0..n {
            for y in 0..n {
                let e = a.tuple_idem(&[x, y]);
                let v = self.get(x, y);
                if !v.lies_in(&e) || !ring.is_unit_in(v, &e) {
                    w = Some(format!(
                        "omega({},{}) = {v} is not a unit of D_g D_gh = {e}",
                        g.label(x),
                        g.label(y)
                    ));
                    break 'units;
                }
            }
        }
        report.push("units", w);

        let mut w = None;
        for x in 0..n {
            let one = a.one(x).to_elem();
            if *self.get(0, x) != one || *self.get(x, 0) != one {
                w = Some(format!("omega(g0,{0}) or omega({0},g0) differs from 1_{0}", g.label(x)));
                break;
            }
        }
        report.push("(iv)", w);

        report.push("(iii)", None);

        let mut w = None;
        'v: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = ring.mul(&a.apply_cut(x, self.get(y, z)), self.get(x, g.mul(y, z)));
                    let rhs = ring.mul(self.get(x, y), self.get(g.mul(x, y), z));
                    if lhs != rhs {
                        w = Some(format!(
                            "({},{},{}): alpha_g(1_g^-1 omega_hl) omega_g,hl = {lhs} but omega_gh omega_gh,l = {rhs}",
                            g.label(x),
                            g.label(y),
                            g.label(z)
                        ));
                        break 'v;
                    }
                }
            }
        }
        let v_passed = w.is_none();
        report.push("(v)", w);

        let mut w = None;
        for x in 0..n {
            let xi = g.inv(x);
            let lhs = a.apply_cut(x, self.get(xi, x));
            let rhs = self.get(x, xi);
            if lhs != *rhs {
                let kind = if v_passed { "ENGINE INCONSISTENCY: " } else { "" };
                w = Some(format!(
                    "{kind}alpha_g(omega(g^-1,g)) = {lhs} but omega(g,g^-1) = {rhs} at g={}",
                    g.label(x)
                ));
                break;
            }
        }
        report.push("afom", w);
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fix_b_supports() {
        let a = fixtures::fix_b();
        let supp: Vec<Vec<usize>> = (0..4).map(|g| a.one(g).support()).collect();
        assert_eq!(supp, vec![vec![0, 1, 2], vec![1, 2], vec![0, 2], vec![0, 1]]);
        assert!(a.validate().passed());
    }

    #[test]
    fn restriction_edge_cases() {
        let global = fixtures::fix_b_global();
        let same = global.restrict_global(&Idem::full(4)).unwrap();
        assert_eq!(same, global);
        assert!(global.restrict_global(&Idem::zero(4)).is_err());
    }

    #[test]
    fn reversed_map_breaks_composition() {
        let a = fixtures::fix_b();
        let mut maps: Vec<Vec<Option<usize>>> = (0..4).map(|g| a.map(g).to_vec()).collect();
        maps[1] = vec![Some(2), Some(1), None];
        let bad = PartialAction::new(a.ring().clone(), a.group().clone(), a.ones().to_vec(), maps)
            .unwrap();
        let report = bad.validate();
        let iii = report.check("(iii)").unwrap();
        assert!(!iii.passed);
        assert!(iii.witness.as_ref().unwrap().starts_with("g=g1, h=g1"));
    }

    #[test]
    fn global_swap_is_valid() {
        assert!(fixtures::fix_a().validate().passed());
    }

    #[test]
    fn twisted_validation() {
        let b = fixtures::fix_b();
        assert!(Twisting::trivial(&b).validate(&b).passed());

        let a = fixtures::fix_a();
        let r = a.ring();
        let good = Twisting::with_entries(&a, &[(1, 1, r.elem(&[2, 2]).unwrap())]).unwrap();
        assert!(good.validate(&a).passed());

        let bad = Twisting::with_entries(&a, &[(1, 1, r.elem(&[1, 2]).unwrap())]).unwrap();
        let rep = bad.validate(&a);
        let v = rep.check("(v)").unwrap();
        assert!(!v.passed);
        assert!(v.witness.as_ref().unwrap().starts_with("(g1,g1,g1)"));
        assert!(rep.check("units").unwrap().passed);

        let non_unit = Twisting::with_entries(&a, &[(1, 1, r.elem(&[0, 1]).unwrap())]).unwrap();
        assert!(!non_unit.validate(&a).check("units").unwrap().passed);
    }

    #[test]
    fn apply_examples() {
        let b = fixtures::fix_b();
        let r = b.ring();
        let x = r.elem(&[2, 1, 0]).unwrap();
        assert_eq!(b.apply(1, &x).unwrap(), r.elem(&[0, 2, 1]).unwrap());
        assert_eq!(b.apply(0, &x).unwrap(), x);
        assert!(b.apply(1, &r.elem(&[0, 0, 1]).unwrap()).is_err());

        let a = fixtures::fix_a();
        let ra = a.ring();
        assert_eq!(a.apply(1, &ra.elem(&[1, 2]).unwrap()).unwrap(), ra.elem(&[2, 1]).unwrap());
    }

    #[test]
    fn invariants() {
        for a in [fixtures::fix_a(), fixtures::fix_b()] {
            let inv = a.invariant_subring();
            assert_eq!(inv.order(), BigInt::from(3));
            assert!(inv.contains(&a.ring().one()));
            assert!(inv.is_subring());
            for x in inv.elements() {
                assert!(x.0.iter().all(|&r| r == x.0[0]));
            }
        }
        let triv = fixtures::trivial_group_on(&[3, 3]);
        assert_eq!(triv.invariant_subring().order(), BigInt::from(9));
    }

    #[test]
    fn trace_lands_in_invariants() {
        let a = fixtures::fix_a();
        let r = a.ring();
        assert_eq!(a.trace(&r.basis(0)), r.one());
        let b = fixtures::fix_b();
        assert_eq!(b.trace(&b.ring().basis(0)), b.ring().one());
        assert_eq!(b.trace(&b.ring().zero()), b.ring().zero());
        for a in [fixtures::fix_a(), fixtures::fix_b()] {
            for x in a.ring().elements() {
                assert!(a.is_invariant(&a.trace(&x)));
            }
        }
    }
}
