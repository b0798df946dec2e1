//! Lattices with explicit bases: integer Gram matrix plus basis labels.
//!
//! Dual vectors are rational coordinate vectors in the lattice basis, so the
//! lattice itself is the set of integer-coordinate vectors and `Λ∨` is the set
//! of vectors `x` with `G·x` integral.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, rat_from_int, ArithError, Inertia, IntMatrix, Rat, RatMatrix};

pub mod enumerate;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is degenerate")]
    Degenerate,
    #[error("{labels} labels for a rank {rank} lattice")]
    LabelCount { labels: usize, rank: usize },
    #[error("vector has {got} coordinates, lattice has rank {rank}")]
    RankMismatch { got: usize, rank: usize },
    #[error("vector does not lie in the lattice")]
    NotInLattice,
    #[error("vector does not lie in the dual lattice (non-integral pairing)")]
    NotInDual,
    #[error("vector has zero norm")]
    Isotropic,
    #[error("lattice is not negative-definite (inertia {0:?})")]
    NotNegativeDefinite(Inertia),
    #[error("class does not belong to this discriminant group")]
    ClassMismatch,
    #[error("unknown built-in lattice {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A rational vector in the coordinates of some lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualVector(pub Vec<Rat>);

impl DualVector {
    pub fn zero(rank: usize) -> Self {
        Self(vec![Rat::zero(); rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = Rat::one();
        v
    }

    pub fn from_ints(v: &[BigInt]) -> Self {
        Self(v.iter().map(rat_from_int).collect())
    }

    pub fn from_i64(v: &[i64]) -> Self {
        Self(v.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect())
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|q| q.is_integer())
    }

    pub fn to_ints(&self) -> Option<Vec<BigInt>> {
        self.is_integral().then(|| self.0.iter().map(|q| q.to_integer()).collect())
    }

    pub fn scaled(&self, k: &Rat) -> Self {
        Self(self.0.iter().map(|x| x * k).collect())
    }

    /// Coordinates as `"p/q"` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(arith::rat_to_string).collect()
    }
}

impl std::ops::Add for &DualVector {
    type Output = DualVector;
    fn add(self, rhs: &DualVector) -> DualVector {
        assert_eq!(self.len(), rhs.len());
        DualVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Sub for &DualVector {
    type Output = DualVector;
    fn sub(self, rhs: &DualVector) -> DualVector {
        assert_eq!(self.len(), rhs.len());
        DualVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl std::ops::Neg for &DualVector {
    type Output = DualVector;
    fn neg(self) -> DualVector {
        DualVector(self.0.iter().map(|a| -a).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    labels: Vec<String>,
    gram: IntMatrix,
}

impl Lattice {
    pub fn new(gram: IntMatrix, labels: Vec<String>) -> Result<Self, LatticeError> {
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        if labels.len() != gram.rows() {
            return Err(LatticeError::LabelCount { labels: labels.len(), rank: gram.rows() });
        }
        if arith::det(&gram)?.is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(Self { labels, gram })
    }

    /// Builds a lattice with labels `prefix1, prefix2, ...`.
    pub fn with_prefix(gram: IntMatrix, prefix: &str) -> Result<Self, LatticeError> {
        let labels = (1..=gram.rows()).map(|i| format!("{prefix}{i}")).collect();
        Self::new(gram, labels)
    }

    pub fn a1() -> Self {
        Self::new(IntMatrix::from_rows(&[[-2]]), vec!["a".into()]).expect("A1 is valid")
    }

    /// `D₄` with `d₃` the central node.
    pub fn d4() -> Self {
        Self::with_prefix(neg_cartan_d4(), "d").expect("D4 is valid")
    }

    pub fn hyperbolic2() -> Self {
        Self::new(IntMatrix::from_rows(&[[2]]), vec!["h".into()]).expect("<2> is valid")
    }

    pub fn named(name: &str) -> Result<Self, LatticeError> {
        match name {
            "A1" => Ok(Self::a1()),
            "D4" => Ok(Self::d4()),
            "hyperbolic2" => Ok(Self::hyperbolic2()),
            other => Err(LatticeError::UnknownName(other.to_string())),
        }
    }

    pub fn direct_sum(parts: &[&Lattice]) -> Self {
        let grams: Vec<&IntMatrix> = parts.iter().map(|l| &l.gram).collect();
        Self {
            labels: parts.iter().flat_map(|l| l.labels.iter().cloned()).collect(),
            gram: IntMatrix::block_diagonal(&grams),
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn det(&self) -> BigInt {
        arith::det(&self.gram).expect("gram is square")
    }

    pub fn inertia(&self) -> Inertia {
        arith::inertia(&self.gram).expect("gram is symmetric")
    }

    pub fn is_negative_definite(&self) -> bool {
        self.inertia().is_negative_definite()
    }

    /// Over Z, evenness only depends on the diagonal.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    /// The inverse Gram matrix; its columns are the dual basis.
    pub fn dual_gram(&self) -> RatMatrix {
        arith::invert(&self.gram).expect("gram is nondegenerate")
    }

    pub fn dual_basis_vector(&self, i: usize) -> DualVector {
        DualVector(self.dual_gram().column(i))
    }

    fn check_rank(&self, v: &DualVector) -> Result<(), LatticeError> {
        if v.len() != self.rank() {
            return Err(LatticeError::RankMismatch { got: v.len(), rank: self.rank() });
        }
        Ok(())
    }

    pub fn pairing(&self, u: &DualVector, v: &DualVector) -> Result<Rat, LatticeError> {
        self.check_rank(u)?;
        self.check_rank(v)?;
        Ok(self.gram.bilinear(&u.0, &v.0))
    }

    pub fn norm(&self, v: &DualVector) -> Result<Rat, LatticeError> {
        self.pairing(v, v)
    }

    /// Pairings of `v` with every basis vector, i.e. `G·v`.
    pub fn pairings_with_basis(&self, v: &DualVector) -> Result<Vec<Rat>, LatticeError> {
        self.check_rank(v)?;
        Ok(self.gram.mul_rat_vec(&v.0))
    }

    pub fn in_dual(&self, v: &DualVector) -> Result<bool, LatticeError> {
        Ok(self.pairings_with_basis(v)?.iter().all(|q| q.is_integer()))
    }

    pub fn discriminant_group(&self) -> DiscriminantGroup {
        DiscriminantGroup::of(self)
    }

    pub fn disc_class(&self, v: &DualVector) -> Result<DiscClass, LatticeError> {
        self.discriminant_group().class_of(self, v)
    }

    /// True iff every nontrivial invariant factor of `Λ∨/Λ` equals `p`.
    pub fn is_p_elementary(&self, p: u64) -> bool {
        let p = BigInt::from(p);
        self.discriminant_group().invariant_factors.iter().all(|d| *d == p)
    }

    /// Saturated basis of `{w ∈ L : w·v = 0}` with its induced Gram matrix.
    pub fn orthogonal_complement(&self, v: &[BigInt]) -> Result<Complement, LatticeError> {
        if v.len() != self.rank() {
            return Err(LatticeError::RankMismatch { got: v.len(), rank: self.rank() });
        }
        if self.gram.bilinear_int(v, v).is_zero() {
            return Err(LatticeError::Isotropic);
        }
        let row = IntMatrix::new(1, self.rank(), self.gram.mul_vec(v))?;
        let basis = arith::integer_kernel(&row);
        let gram = self.gram.congruent(&basis);
        let lattice = Lattice::with_prefix(gram, "c")?;
        Ok(Complement { lattice, basis })
    }

    /// Like [`Lattice::orthogonal_complement`] but accepting a dual vector,
    /// which must have integer coordinates.
    pub fn orthogonal_complement_of(&self, v: &DualVector) -> Result<Complement, LatticeError> {
        self.check_rank(v)?;
        let ints = v.to_ints().ok_or(LatticeError::NotInLattice)?;
        self.orthogonal_complement(&ints)
    }
}

pub(crate) fn neg_cartan_d4() -> IntMatrix {
    IntMatrix::from_rows(&[[-2, 0, 1, 0], [0, -2, 1, 0], [1, 1, -2, 1], [0, 0, 1, -2]])
}

/// An orthogonal complement together with its basis in the parent lattice
/// (one column per basis vector, parent coordinates).
#[derive(Clone, Debug)]
pub struct Complement {
    pub lattice: Lattice,
    pub basis: IntMatrix,
}

impl Complement {
    pub fn to_parent(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.basis.mul_vec(x)
    }

    /// Elementary divisors of the basis matrix; all ones iff the sublattice is primitive.
    pub fn is_saturated(&self) -> bool {
        arith::snf(&self.basis).invariant_factors().iter().all(One::is_one)
    }
}

/// `Λ∨/Λ`, read off the Smith form `U·G·V = S`.
///
/// A dual vector `x` maps to `y = G·x ∈ Zⁿ`, and `Zⁿ/G·Zⁿ ≅ ⊕ Z/dᵢ` through
/// `y ↦ U·y mod dᵢ`.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    /// Invariant factors greater than one, in divisibility order.
    pub invariant_factors: Vec<BigInt>,
    pub generators: Vec<DualVector>,
    pub order: BigInt,
    u_rows: Vec<Vec<BigInt>>,
}

impl DiscriminantGroup {
    fn of(l: &Lattice) -> Self {
        let res = arith::snf(l.gram());
        let factors = res.invariant_factors();
        let u_inv = arith::invert(&res.u).expect("unimodular");
        let g_inv = l.dual_gram();
        let mut invariant_factors = Vec::new();
        let mut generators = Vec::new();
        let mut u_rows = Vec::new();
        for (i, d) in factors.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            invariant_factors.push(d.clone());
            generators.push(DualVector(g_inv.mul_vec(&u_inv.column(i))));
            u_rows.push(res.u.row(i).to_vec());
        }
        debug_assert_eq!(generators.len(), u_rows.len());
        let order = invariant_factors.iter().product();
        Self { invariant_factors, generators, order, u_rows }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn class_of(&self, l: &Lattice, v: &DualVector) -> Result<DiscClass, LatticeError> {
        let y = l.pairings_with_basis(v)?;
        if !y.iter().all(|q| q.is_integer()) {
            return Err(LatticeError::NotInDual);
        }
        let y: Vec<BigInt> = y.iter().map(|q| q.to_integer()).collect();
        let residues = self
            .u_rows
            .iter()
            .zip(&self.invariant_factors)
            .map(|(row, d)| row.iter().zip(&y).map(|(a, b)| a * b).sum::<BigInt>().mod_floor(d))
            .collect();
        Ok(DiscClass { residues, moduli: self.invariant_factors.clone() })
    }

    /// A dual vector in the given class, built from the generators.
    pub fn representative(&self, c: &DiscClass) -> Result<DualVector, LatticeError> {
        if c.moduli != self.invariant_factors {
            return Err(LatticeError::ClassMismatch);
        }
        let rank = self.generators.first().map_or(0, DualVector::len);
        let mut v = DualVector::zero(rank);
        for (g, r) in self.generators.iter().zip(&c.residues) {
            v = &v + &g.scaled(&rat_from_int(r));
        }
        Ok(v)
    }

    pub fn zero_class(&self) -> DiscClass {
        DiscClass { residues: vec![BigInt::zero(); self.invariant_factors.len()], moduli: self.invariant_factors.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiscClass {
    pub residues: Vec<BigInt>,
    pub moduli: Vec<BigInt>,
}

impl DiscClass {
    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(Zero::is_zero)
    }
}

/// Discriminant quadratic form value `v² mod 2Z` (for even lattices).
pub fn discriminant_quadratic(l: &Lattice, v: &DualVector) -> Result<Rat, LatticeError> {
    let n = l.norm(v)?;
    let two = Rat::from_integer(BigInt::from(2));
    let k = (&n / &two).floor();
    Ok(n - k * two)
}

/// Coordinates of `v` reduced into `[0, 1)`; same class modulo the lattice.
pub fn fractional_part(v: &DualVector) -> DualVector {
    DualVector(v.0.iter().map(|q| q - q.floor()).collect())
}

pub fn abs_rat(q: &Rat) -> Rat {
    if q.is_negative() {
        -q.clone()
    } else {
        q.clone()
    }
}
