//! The Picard semigroup of a finite ring and the induced partial action.
//!
//! Every ideal `Re` of a finite commutative ring has trivial Picard group,
//! so the classes of `PicS(R)` are the idempotents `[Re]` and the product of
//! classes is the product of idempotents.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finring::{Idem, Ring};
use crate::paction::{PartialAction, ValidationReport};

#[derive(Clone, Debug)]
pub struct PicS {
    classes: Vec<Idem>,
}

impl PicS {
    pub fn new(ring: &Ring) -> PicS {
        PicS { classes: ring.idempotents() }
    }

    pub fn classes(&self) -> &[Idem] {
        &self.classes
    }

    pub fn index(&self, e: &Idem) -> Option<usize> {
        self.classes.iter().position(|c| c == e)
    }

    /// `[e][f] = [ef]`.
    pub fn mul(&self, e: &Idem, f: &Idem) -> Idem {
        e.meet(f)
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.classes
            .iter()
            .map(|e| {
                self.classes.iter().map(|f| self.index(&e.meet(f)).expect("closed")).collect()
            })
            .collect()
    }

    pub fn identity(&self) -> &Idem {
        self.classes.last().expect("at least [0] and [1]")
    }

    pub fn zero(&self) -> &Idem {
        &self.classes[0]
    }

    /// `e* = e`: every class is its own inverse in the inverse monoid.
    pub fn inverse(&self, e: &Idem) -> Idem {
        e.clone()
    }
}

/// `X_g = [D_g] PicS(R)`: classes below `1_g`.
pub fn domain(a: &PartialAction, g: usize) -> Vec<Idem> {
    a.ring().idempotents().into_iter().filter(|e| e.le(a.one(g))).collect()
}

/// `alpha*_g([Re]) = [R alpha_g(e)]` for `e <= 1_{g^-1}`.
pub fn alpha_star(a: &PartialAction, g: usize, c: &Idem) -> Result<Idem> {
    let dom = a.one(a.group().inv(g));
    if c.0.len() != dom.0.len() {
        return Err(Error::Arity { expected: dom.0.len(), got: c.0.len() });
    }
    if !c.le(dom) {
        return Err(Error::Domain(format!(
            "class {c} is outside X_{}^-1",
            a.group().label(g)
        )));
    }
    Ok(a.apply_idem(g, c))
}

/// `[Re]` with `alpha_g(e 1_{g^-1}) = e 1_g` for every `g`.
pub fn fixed_classes(a: &PartialAction) -> Vec<Idem> {
    a.ring()
        .idempotents()
        .into_iter()
        .filter(|e| a.group().elements().all(|g| a.apply_idem(g, e) == e.meet(a.one(g))))
        .collect()
}

/// Partial-action axioms for `alpha*` on the semilattice, plus the inverse
/// submonoid properties of the fixed classes.
pub fn semilattice_check(a: &PartialAction) -> ValidationReport {
    let grp = a.group();
    let n = grp.order();
    let classes = a.ring().idempotents();
    let mut checks = Vec::new();
    let mut push = |axiom: &str, witness: Option<String>| {
        checks.push(crate::paction::AxiomCheck {
            axiom: axiom.into(),
            passed: witness.is_none(),
            witness,
        })
    };

    let w = classes
        .iter()
        .find(|c| alpha_star(a, 0, c).ok().as_ref() != Some(*c))
        .map(|c| format!("alpha*_g0 moves {c}"));
    push("(i)", w);

    let mut w = None;
    'ii: for g in 0..n {
        for h in 0..n {
            let lhs: Vec<Idem> = {
                let mut v: Vec<Idem> = domain(a, grp.inv(g))
                    .into_iter()
                    .filter(|c| c.le(a.one(h)))
                    .map(|c| alpha_star(a, g, &c).expect("in domain"))
                    .collect();
                v.sort();
                v
            };
            let rhs: Vec<Idem> = {
                let mut v: Vec<Idem> =
                    domain(a, g).into_iter().filter(|c| c.le(a.one(grp.mul(g, h)))).collect();
                v.sort();
                v
            };
            if lhs != rhs {
                w = Some(format!(
                    "alpha*_{}(X_g^-1 X_{}) differs from X_g X_gh",
                    grp.label(g),
                    grp.label(h)
                ));
                break 'ii;
            }
        }
    }
    push("(ii)", w);

    let mut w = None;
    'iii: for g in 0..n {
        for h in 0..n {
            let gh = grp.mul(g, h);
            for c in &classes {
                if c.le(a.one(grp.inv(h))) && c.le(a.one(grp.inv(gh))) {
                    let via = alpha_star(a, g, &alpha_star(a, h, c).expect("in domain"));
                    let direct = alpha_star(a, gh, c).expect("in domain");
                    if via.as_ref().ok() != Some(&direct) {
                        w = Some(format!(
                            "alpha*_{} alpha*_{} and alpha*_gh differ on {c}",
                            grp.label(g),
                            grp.label(h)
                        ));
                        break 'iii;
                    }
                }
            }
        }
    }
    push("(iii)", w);

    let mut w = None;
    'mult: for g in 0..n {
        let dom = domain(a, grp.inv(g));
        for c in &dom {
            for d in &dom {
                let lhs = alpha_star(a, g, &c.meet(d)).expect("in domain");
                let rhs =
                    alpha_star(a, g, c).expect("in domain").meet(&alpha_star(a, g, d).expect("in domain"));
                if lhs != rhs {
                    w = Some(format!("alpha*_{} is not multiplicative at {c}, {d}", grp.label(g)));
                    break 'mult;
                }
            }
        }
    }
    push("multiplicative", w);

    let fixed = fixed_classes(a);
    let closed = fixed.iter().all(|e| fixed.iter().all(|f| fixed.contains(&e.meet(f))));
    let c = a.ring().len();
    let w = if !closed {
        Some("fixed classes are not closed under products".into())
    } else if !fixed.contains(&Idem::zero(c)) || !fixed.contains(&Idem::full(c)) {
        Some("fixed classes miss [0] or [R]".into())
    } else {
        None
    };
    push("fixed-submonoid", w);
    ValidationReport { checks }
}

#[derive(Clone, Debug, Serialize)]
pub struct PicsReport {
    pub classes: Vec<Vec<u8>>,
    pub table: Vec<Vec<usize>>,
    pub domains: Vec<Vec<Vec<u8>>>,
    pub fixed: Vec<Vec<u8>>,
    pub fixed_equals_invariant_idempotents: bool,
    pub axioms: ValidationReport,
}

pub fn pics_report(a: &PartialAction) -> PicsReport {
    let p = PicS::new(a.ring());
    let fixed = fixed_classes(a);
    let inv_idems = a.invariant_subring().idempotents();
    PicsReport {
        classes: p.classes().iter().map(|e| e.bits()).collect(),
        table: p.table(),
        domains: a
            .group()
            .elements()
            .map(|g| domain(a, g).iter().map(|e| e.bits()).collect())
            .collect(),
        fixed_equals_invariant_idempotents: fixed == inv_idems,
        fixed: fixed.iter().map(|e| e.bits()).collect(),
        axioms: semilattice_check(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn semilattices() {
        let r = Ring::parse(&[3, 3]).unwrap();
        let p = PicS::new(&r);
        assert_eq!(p.classes().len(), 4);
        assert_eq!(PicS::new(&Ring::parse(&[4]).unwrap()).classes().len(), 2);
        let e = Idem(vec![true, false]);
        let f = Idem(vec![false, true]);
        assert_eq!(p.mul(&e, &f), Idem(vec![false, false]));
        assert_eq!(p.mul(&e, p.identity()), e);
    }

    #[test]
    fn transport() {
        let b = fixtures::fix_b();
        let e0 = Idem(vec![true, false, false]);
        assert_eq!(alpha_star(&b, 1, &e0).unwrap(), Idem(vec![false, true, false]));
        assert!(alpha_star(&b, 1, &Idem(vec![false, false, true])).is_err());
        for c in b.ring().idempotents() {
            assert_eq!(alpha_star(&b, 0, &c).unwrap(), c);
        }
        for g in 0..4 {
            let dom = b.one(b.group().inv(g)).clone();
            assert_eq!(alpha_star(&b, g, &dom).unwrap(), *b.one(g));
        }
    }

    #[test]
    fn fixed() {
        let full = |n| vec![Idem::zero(n), Idem::full(n)];
        assert_eq!(fixed_classes(&fixtures::fix_b()), full(3));
        assert_eq!(fixed_classes(&fixtures::fix_a()), full(2));
        assert_eq!(fixed_classes(&fixtures::trivial_group_on(&[2, 3])).len(), 4);
        for a in [fixtures::fix_a(), fixtures::fix_b()] {
            let rep = pics_report(&a);
            assert!(rep.fixed_equals_invariant_idempotents);
            assert!(rep.axioms.passed(), "{:?}", rep.axioms);
        }
    }
}
