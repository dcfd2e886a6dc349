//! The Z[η]-order generated by `1, i, j, j′`, as a rank-12 lattice over Z.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::group::{GroupElement, QuatElem};
use crate::tower::{FElem, Rat};

/// A full-rank Z-lattice in Q¹², stored as `basis / den` with `basis` in
/// Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderLattice {
    basis: Vec<Vec<BigInt>>,
    den: BigInt,
}

fn coords(q: &QuatElem) -> Vec<Rat> {
    q.x.iter().flat_map(|f| f.coeffs().iter().cloned()).collect()
}

fn from_coords(v: &[Rat]) -> QuatElem {
    let f = |k: usize| FElem::new([v[3 * k].clone(), v[3 * k + 1].clone(), v[3 * k + 2].clone()]);
    QuatElem::new([f(0), f(1), f(2), f(3)])
}

/// Row-style Hermite normal form; zero rows are dropped.
pub fn hnf(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let mut m = rows;
    let n = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..n {
        loop {
            let piv = (r..m.len()).filter(|&i| !m[i][col].is_zero()).min_by_key(|&i| m[i][col].abs());
            let Some(p) = piv else { break };
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&m[r][col]);
                let row_r = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&row_r) {
                    *x -= &q * y;
                }
                if !m[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r >= m.len() || m[r][col].is_zero() {
            continue;
        }
        if m[r][col].is_negative() {
            for x in m[r].iter_mut() {
                *x = -&*x;
            }
        }
        let row_r = m[r].clone();
        for i in 0..r {
            let q = m[i][col].div_floor(&row_r[col]);
            if q.is_zero() {
                continue;
            }
            for (x, y) in m[i].iter_mut().zip(&row_r) {
                *x -= &q * y;
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

fn pivot(row: &[BigInt]) -> usize {
    row.iter().position(|x| !x.is_zero()).expect("nonzero row")
}

impl OrderLattice {
    fn from_rational_rows(rows: &[Vec<Rat>]) -> Self {
        let den = rows.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let dq = Rat::from_integer(den.clone());
        let ints = rows.iter().map(|r| r.iter().map(|q| (q * &dq).to_integer()).collect()).collect();
        OrderLattice { basis: hnf(ints), den }
    }

    fn rows(&self) -> Vec<Vec<Rat>> {
        self.basis
            .iter()
            .map(|r| r.iter().map(|x| Rat::new(x.clone(), self.den.clone())).collect())
            .collect()
    }

    /// Close `Z[η]⟨1, i, j, j′⟩` under right multiplication by the generators.
    pub fn generated() -> Self {
        let gens = [QuatElem::i(), QuatElem::j(), QuatElem::j_prime()];
        let eta = FElem::eta();
        let mut seeds = Vec::new();
        for g in [QuatElem::one(), QuatElem::i(), QuatElem::j(), QuatElem::j_prime()] {
            let mut x = g;
            for _ in 0..3 {
                seeds.push(coords(&x));
                x = x.scale(&eta);
            }
        }
        let mut lat = OrderLattice::from_rational_rows(&seeds);
        loop {
            let mut rows = lat.rows();
            for r in lat.rows() {
                let q = from_coords(&r);
                rows.push(coords(&q.scale(&eta)));
                for g in &gens {
                    rows.push(coords(&q.mul(g)));
                }
            }
            let next = OrderLattice::from_rational_rows(&rows);
            if next == lat {
                return lat;
            }
            lat = next;
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> Vec<QuatElem> {
        self.rows().iter().map(|r| from_coords(r)).collect()
    }

    pub fn contains(&self, q: &QuatElem) -> bool {
        let dq = Rat::from_integer(self.den.clone());
        let scaled: Vec<Rat> = coords(q).iter().map(|x| x * &dq).collect();
        if scaled.iter().any(|x| !x.is_integer()) {
            return false;
        }
        let mut v: Vec<BigInt> = scaled.iter().map(|x| x.to_integer()).collect();
        for row in &self.basis {
            let p = pivot(row);
            if v[..p].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, rem) = v[p].div_rem(&row[p]);
            if !rem.is_zero() {
                return false;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        v.iter().all(Zero::is_zero)
    }
}

pub fn order() -> &'static OrderLattice {
    static O: OnceLock<OrderLattice> = OnceLock::new();
    O.get_or_init(OrderLattice::generated)
}

pub fn in_order(q: &QuatElem) -> bool {
    order().contains(q)
}

pub fn element_in_order(g: &GroupElement) -> bool {
    in_order(&g.quat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{g2, g3, g7};
    use crate::tower::rat;

    #[test]
    fn order_has_full_rank() {
        assert_eq!(order().rank(), 12);
    }

    #[test]
    fn membership() {
        assert!(in_order(&QuatElem::j_prime()));
        assert!(in_order(&QuatElem::one()));
        assert!(!in_order(&QuatElem::one().scale(&FElem::from_rat(rat(1, 2)))));
        for g in [g2(), g3(), g7()] {
            assert!(element_in_order(&g));
        }
    }

    #[test]
    fn hnf_small() {
        let rows = vec![
            vec![BigInt::from(4), BigInt::from(6)],
            vec![BigInt::from(2), BigInt::from(2)],
        ];
        let h = hnf(rows);
        assert_eq!(h, vec![vec![BigInt::from(2), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(2)]]);
    }
}
