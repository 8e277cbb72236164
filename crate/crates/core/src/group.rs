//! Finite groups given by Cayley tables, identity at index 0.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    labels: Vec<String>,
    /// Indices of a generating set (standard generators for cyclic/product
    /// constructions, every non-identity element for explicit tables).
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Validates an explicit table: closure, associativity, identity at 0,
    /// two-sided inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Validation("group table is empty".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!("row {a} has length {}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::Validation(format!("entry {x} in row {a} is out of range")));
            }
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::Validation(format!(
                    "element 0 is not a two-sided identity (fails at {a})"
                )));
            }
        }
        let mut inverse = vec![0; n];
        for a in 0..n {
            let inv = (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0);
            match inv {
                Some(b) => inverse[a] = b,
                None => {
                    return Err(Error::Validation(format!("element {a} has no two-sided inverse")))
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Validation(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let labels = (0..n).map(|i| format!("g{i}")).collect();
        let generators = (1..n).collect();
        Ok(FiniteGroup { table, inverse, labels, generators })
    }

    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        FiniteGroup::product(&[n])
    }

    /// `C_{n1} x C_{n2} x ...`, elements in mixed-radix order (last factor
    /// fastest).
    pub fn product(orders: &[usize]) -> Result<FiniteGroup> {
        if orders.contains(&0) {
            return Err(Error::Validation("cyclic factor of order 0".into()));
        }
        let n: usize = orders.iter().product();
        let digits = |mut x: usize| {
            let mut d = vec![0; orders.len()];
            for k in (0..orders.len()).rev() {
                d[k] = x % orders[k];
                x /= orders[k];
            }
            d
        };
        let index = |d: &[usize]| d.iter().zip(orders).fold(0, |acc, (x, o)| acc * o + x);
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                let da = digits(a);
                (0..n)
                    .map(|b| {
                        let db = digits(b);
                        let s: Vec<usize> =
                            da.iter().zip(&db).zip(orders).map(|((x, y), o)| (x + y) % o).collect();
                        index(&s)
                    })
                    .collect()
            })
            .collect();
        let mut g = FiniteGroup::from_table(table)?;
        g.generators = (0..orders.len())
            .filter(|&k| orders[k] > 1)
            .map(|k| {
                let mut d = vec![0; orders.len()];
                d[k] = 1;
                index(&d)
            })
            .collect();
        Ok(g)
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// All n-tuples of elements in lexicographic order.
    pub fn tuples(&self, n: usize) -> Vec<Vec<usize>> {
        let order = self.order();
        let total = order.pow(n as u32);
        (0..total)
            .map(|mut k| {
                let mut t = vec![0; n];
                for i in (0..n).rev() {
                    t[i] = k % order;
                    k /= order;
                }
                t
            })
            .collect()
    }

    /// Product `g1 g2 ... gk`.
    pub fn prod(&self, elems: &[usize]) -> usize {
        elems.iter().fold(0, |acc, &g| self.mul(acc, g))
    }

    /// Looks up an element by label (`"g3"`) or decimal index.
    pub fn parse_element(&self, s: &str) -> Result<usize> {
        let idx = s
            .strip_prefix('g')
            .unwrap_or(s)
            .parse::<usize>()
            .map_err(|_| Error::Input(format!("unknown group element {s:?}")))?;
        if idx >= self.order() {
            return Err(Error::Input(format!("group element {s:?} out of range")));
        }
        Ok(idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_four() {
        let g = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(g.mul(1, 3), 0);
        assert_eq!(g.inv(1), 3);
        assert_eq!(g.generators(), &[1]);
    }

    #[test]
    fn klein_four() {
        let g = FiniteGroup::product(&[2, 2]).unwrap();
        assert_eq!(g.order(), 4);
        for a in g.elements() {
            assert_eq!(g.mul(a, a), 0);
        }
        assert_eq!(g.generators(), &[2, 1]);
    }

    #[test]
    fn bad_table_rejected() {
        let err = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(err.to_string().contains("element 1 has no two-sided inverse"));
    }

    #[test]
    fn inverse_of_products() {
        let s3 = FiniteGroup::from_table(vec![
            vec![0, 1, 2, 3, 4, 5],
            vec![1, 2, 0, 4, 5, 3],
            vec![2, 0, 1, 5, 3, 4],
            vec![3, 5, 4, 0, 2, 1],
            vec![4, 3, 5, 1, 0, 2],
            vec![5, 4, 3, 2, 1, 0],
        ])
        .unwrap();
        for a in s3.elements() {
            for b in s3.elements() {
                assert_eq!(s3.inv(s3.mul(a, b)), s3.mul(s3.inv(b), s3.inv(a)));
            }
        }
    }
}
