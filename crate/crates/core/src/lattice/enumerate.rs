//! Exact short-vector enumeration in cosets of negative-definite lattices.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{DualVector, Lattice, LatticeError};
use crate::arith::{self, rat, rat_from_int, round_rat, IntMatrix, Rat};

/// A vector `v` together with `q = -v·v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortVector {
    pub vector: DualVector,
    pub q: Rat,
}

impl Lattice {
    /// All `v ∈ shift + Λ` with `-v·v ≤ bound`, sorted by `(q, coordinates)`.
    ///
    /// Requires a negative-definite lattice. The basis is LLL-reduced before
    /// enumerating, so results are independent of how well-conditioned the
    /// given basis is.
    pub fn short_vectors(&self, shift: Option<&DualVector>, bound: &Rat) -> Result<Vec<ShortVector>, LatticeError> {
        let n = self.rank();
        let inertia = self.inertia();
        if !inertia.is_negative_definite() {
            return Err(LatticeError::NotNegativeDefinite(inertia));
        }
        let shift = match shift {
            Some(s) => {
                self.check_rank(s)?;
                s.clone()
            }
            None => DualVector::zero(n),
        };
        let q = IntMatrix::from_fn(n, n, |i, j| -self.gram()[(i, j)].clone());
        let t = lll(&q);
        let reduced = q.congruent(&t);
        let t_inv = arith::invert(&t)?;
        let shift_z = t_inv.mul_vec(shift.coords());
        let t_rat = t.to_rat();
        let mut out = Vec::new();
        fincke_pohst(&reduced, &shift_z, bound, |z, q| {
            out.push(ShortVector { vector: DualVector(t_rat.mul_vec(z)), q: q.clone() });
        })?;
        out.sort_by(|a, b| a.q.cmp(&b.q).then_with(|| a.vector.cmp(&b.vector)));
        Ok(out)
    }

    /// Vectors of `Λ` with norm exactly `-2`, sorted.
    pub fn roots(&self) -> Result<Vec<Vec<BigInt>>, LatticeError> {
        let two = rat(2, 1);
        Ok(self
            .short_vectors(None, &two)?
            .into_iter()
            .filter(|s| s.q == two)
            .map(|s| s.vector.to_ints().expect("integral coset"))
            .collect())
    }
}

/// Rational decomposition `Q(y) = Σ dᵢ (yᵢ + Σ_{j>i} mᵢⱼ yⱼ)²`.
fn quadratic_decomposition(q: &IntMatrix) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
    let n = q.rows();
    let mut a: Vec<Vec<Rat>> = (0..n).map(|i| (0..n).map(|j| rat_from_int(&q[(i, j)])).collect()).collect();
    for i in 0..n {
        if !a[i][i].is_positive() {
            return None;
        }
        for j in i + 1..n {
            a[j][i] = a[i][j].clone();
            a[i][j] = &a[i][j] / &a[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let delta = &a[k][i] * &a[i][l];
                a[k][l] -= delta;
            }
        }
    }
    let d = (0..n).map(|i| a[i][i].clone()).collect();
    Some((d, a))
}

/// Visits every `y ∈ shift + Zⁿ` with `Q(y) ≤ bound`, passing `(y, Q(y))`.
///
/// `q` must be positive definite.
pub fn fincke_pohst(
    q: &IntMatrix,
    shift: &[Rat],
    bound: &Rat,
    mut visit: impl FnMut(&[Rat], &Rat),
) -> Result<(), LatticeError> {
    let n = q.rows();
    if shift.len() != n {
        return Err(LatticeError::RankMismatch { got: shift.len(), rank: n });
    }
    if n == 0 {
        if !bound.is_negative() {
            visit(&[], &Rat::zero());
        }
        return Ok(());
    }
    let inertia = arith::inertia(q)?;
    let (d, m) = quadratic_decomposition(q).ok_or(LatticeError::NotNegativeDefinite(inertia))?;
    let mut y = vec![Rat::zero(); n];
    let mut ctx = Ctx { d: &d, m: &m, shift, bound, y: &mut y, visit: &mut visit };
    ctx.level(n - 1, bound.clone());
    Ok(())
}

struct Ctx<'a, F: FnMut(&[Rat], &Rat)> {
    d: &'a [Rat],
    m: &'a [Vec<Rat>],
    shift: &'a [Rat],
    bound: &'a Rat,
    y: &'a mut Vec<Rat>,
    visit: &'a mut F,
}

impl<F: FnMut(&[Rat], &Rat)> Ctx<'_, F> {
    fn level(&mut self, i: usize, rem: Rat) {
        let n = self.y.len();
        let mut center = Rat::zero();
        for j in i + 1..n {
            center -= &self.m[i][j] * &self.y[j];
        }
        // y_i = x + shift_i and the level cost is d_i (x - t)².
        let t = &center - &self.shift[i];
        let start = round_rat(&t);
        let up_start = if rat_from_int(&start) >= t { start.clone() } else { &start + BigInt::one() };
        let mut x = up_start.clone();
        while let Some(r) = self.cost(i, &x, &t, &rem) {
            self.descend(i, &x, r);
            x += 1;
        }
        let mut x = up_start - 1;
        while let Some(r) = self.cost(i, &x, &t, &rem) {
            self.descend(i, &x, r);
            x -= 1;
        }
    }

    fn cost(&self, i: usize, x: &BigInt, t: &Rat, rem: &Rat) -> Option<Rat> {
        let diff = rat_from_int(x) - t;
        let left = rem - &self.d[i] * &diff * &diff;
        (!left.is_negative()).then_some(left)
    }

    fn descend(&mut self, i: usize, x: &BigInt, rem: Rat) {
        self.y[i] = rat_from_int(x) + &self.shift[i];
        if i == 0 {
            let value = self.bound - &rem;
            (self.visit)(self.y, &value);
        } else {
            self.level(i - 1, rem);
        }
    }
}

/// LLL reduction (δ = 3/4) of a positive-definite Gram matrix.
///
/// Returns a unimodular `T` whose columns are the reduced basis, so the
/// reduced Gram matrix is `Tᵀ Q T`.
pub fn lll(q: &IntMatrix) -> IntMatrix {
    let n = q.rows();
    let mut g: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| q[(i, j)].clone()).collect()).collect();
    let mut t: Vec<Vec<BigInt>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    if n < 2 {
        return IntMatrix::from_columns(n, &t);
    }
    let delta = rat(3, 4);
    let (mut mu, mut b) = gso(&g);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let r = round_rat(&mu[k][j]);
            if r.is_zero() {
                continue;
            }
            // b_k ← b_k - r·b_j
            for i in 0..n {
                let v = &r * &g[i][j];
                g[i][k] -= v;
            }
            for i in 0..n {
                let v = &r * &g[j][i];
                g[k][i] -= v;
            }
            let (tk, tj) = pick_two(&mut t, k, j);
            for (a, c) in tk.iter_mut().zip(tj.iter()) {
                *a -= &r * c;
            }
            let rq = rat_from_int(&r);
            for l in 0..j {
                let v = &rq * &mu[j][l];
                mu[k][l] -= v;
            }
            mu[k][j] -= &rq;
        }
        let lhs = &b[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &b[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            g.swap(k, k - 1);
            for row in g.iter_mut() {
                row.swap(k, k - 1);
            }
            t.swap(k, k - 1);
            (mu, b) = gso(&g);
            k = (k - 1).max(1);
        }
    }
    IntMatrix::from_columns(n, &t)
}

fn pick_two<T>(v: &mut [T], a: usize, b: usize) -> (&mut T, &T) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&mut lo[a], &hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&mut hi[0], &lo[b])
    }
}

fn gso(g: &[Vec<BigInt>]) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let n = g.len();
    let mut mu = vec![vec![Rat::zero(); n]; n];
    let mut b = vec![Rat::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = rat_from_int(&g[i][j]);
            for k in 0..j {
                s -= &mu[j][k] * &mu[i][k] * &b[k];
            }
            mu[i][j] = s / &b[j];
        }
        let mut s = rat_from_int(&g[i][i]);
        for k in 0..i {
            s -= &mu[i][k] * &mu[i][k] * &b[k];
        }
        b[i] = s;
    }
    (mu, b)
}
