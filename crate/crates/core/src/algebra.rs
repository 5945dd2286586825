//! Exact scalars, sparse expansions, tensor squares, unitriangular transition
//! matrices, and the generic machinery for graded connected Hopf algebras.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Debug};
use std::hash::Hash;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::composition::Composition;

/// The only scalar type: an exact, always-reduced rational.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("cannot combine expansions in bases {0} and {1}")]
    MixedBasis(String, String),
    #[error("empty linear combination has no basis")]
    EmptyCombination,
    #[error("matrix is not unitriangular: {0}")]
    NotUnitriangular(String),
    #[error("index mismatch between matrices")]
    IndexMismatch,
}

/// A finite linear combination of basis indices with rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Expansion<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

pub type TensorExpansion<K> = Expansion<(K, K)>;

impl<K: Ord> Default for Expansion<K> {
    fn default() -> Self {
        Expansion { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Expansion<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, Rational::one())
    }

    pub fn term(key: K, coeff: Rational) -> Self {
        let mut e = Self::default();
        e.add_term(key, coeff);
        e
    }

    pub fn add_term(&mut self, key: K, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> BTreeMap<K, Rational> {
        self.terms
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Expansion {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    /// Extends a basis-level map linearly.
    pub fn linear_map<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Expansion<L>) -> Expansion<L> {
        let mut out = Expansion::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn try_linear_map<L: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&K) -> Result<Expansion<L>, E>,
    ) -> Result<Expansion<L>, E> {
        let mut out = Expansion::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }

    /// Applies a linear functional given by its values on basis indices.
    pub fn evaluate(&self, mut f: impl FnMut(&K) -> Rational) -> Rational {
        let mut acc = Rational::zero();
        for (k, c) in &self.terms {
            let v = f(k);
            if !v.is_zero() {
                acc += c * v;
            }
        }
        acc
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Expansion {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Rekeys terms, merging any that collide.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> Expansion<L> {
        let mut out = Expansion::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for Expansion<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut e = Expansion::zero();
        for (k, c) in iter {
            e.add_term(k, c);
        }
        e
    }
}

impl<K: Ord + Clone> Add for &Expansion<K> {
    type Output = Expansion<K>;
    fn add(self, rhs: Self) -> Expansion<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl<K: Ord + Clone> Sub for &Expansion<K> {
    type Output = Expansion<K>;
    fn sub(self, rhs: Self) -> Expansion<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl<K: Ord + Clone> Neg for &Expansion<K> {
    type Output = Expansion<K>;
    fn neg(self) -> Expansion<K> {
        self.scale(&-Rational::one())
    }
}

impl<K: Ord + Debug> Debug for Expansion<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*{:?}", fmt_rational(c), k)?;
        }
        Ok(())
    }
}

/// `Σ x_i y_j f(i, j)`.
pub fn bilinear<A, B, O>(
    x: &Expansion<A>,
    y: &Expansion<B>,
    mut f: impl FnMut(&A, &B) -> Expansion<O>,
) -> Expansion<O>
where
    A: Ord + Clone,
    B: Ord + Clone,
    O: Ord + Clone,
{
    let mut out = Expansion::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_scaled(&f(a, b), &(ca * cb));
        }
    }
    out
}

pub fn try_bilinear<A, B, O, E>(
    x: &Expansion<A>,
    y: &Expansion<B>,
    mut f: impl FnMut(&A, &B) -> Result<Expansion<O>, E>,
) -> Result<Expansion<O>, E>
where
    A: Ord + Clone,
    B: Ord + Clone,
    O: Ord + Clone,
{
    let mut out = Expansion::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_scaled(&f(a, b)?, &(ca * cb));
        }
    }
    Ok(out)
}

/// `x ⊗ y`.
pub fn tensor<K: Ord + Clone>(x: &Expansion<K>, y: &Expansion<K>) -> TensorExpansion<K> {
    bilinear(x, y, |a, b| Expansion::basis((a.clone(), b.clone())))
}

/// Applies `f ⊗ g` to a tensor.
pub fn tensor_map<K, L>(
    t: &TensorExpansion<K>,
    mut f: impl FnMut(&K) -> Expansion<L>,
    mut g: impl FnMut(&K) -> Expansion<L>,
) -> TensorExpansion<L>
where
    K: Ord + Clone,
    L: Ord + Clone,
{
    t.linear_map(|(a, b)| tensor(&f(a), &g(b)))
}

/// Product in the tensor square: `(a⊗b)(c⊗d) = ac ⊗ bd`.
pub fn tensor_product<K: Ord + Clone>(
    x: &TensorExpansion<K>,
    y: &TensorExpansion<K>,
    mut mul: impl FnMut(&K, &K) -> Expansion<K>,
) -> TensorExpansion<K> {
    bilinear(x, y, |(a, b), (c, d)| tensor(&mul(a, c), &mul(b, d)))
}

/// An expansion carrying a basis tag, so that combinations across bases are
/// rejected at runtime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tagged<T, K: Ord> {
    pub basis: T,
    pub terms: Expansion<K>,
}

impl<T: Copy + Eq + fmt::Display, K: Ord + Clone> Tagged<T, K> {
    pub fn new(basis: T, terms: Expansion<K>) -> Self {
        Tagged { basis, terms }
    }

    pub fn zero(basis: T) -> Self {
        Tagged { basis, terms: Expansion::zero() }
    }

    pub fn basis_element(basis: T, key: K) -> Self {
        Tagged { basis, terms: Expansion::basis(key) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Tagged { basis: self.basis, terms: self.terms.scale(c) }
    }

    /// `Σ c_i x_i`; every `x_i` must share one basis.
    pub fn linear_combine(pairs: &[(Rational, &Self)]) -> Result<Self, AlgebraError> {
        let basis = pairs.first().ok_or(AlgebraError::EmptyCombination)?.1.basis;
        let mut out = Expansion::zero();
        for (c, x) in pairs {
            if x.basis != basis {
                return Err(AlgebraError::MixedBasis(basis.to_string(), x.basis.to_string()));
            }
            out.add_scaled(&x.terms, c);
        }
        Ok(Tagged { basis, terms: out })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        Self::linear_combine(&[(Rational::one(), self), (Rational::one(), other)])
    }
}

/// Square matrix indexed by the compositions of one degree, stored as sparse rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    degree: usize,
    index: Vec<Composition>,
    position: HashMap<Composition, usize>,
    rows: Vec<BTreeMap<usize, Rational>>,
}

impl TransitionMatrix {
    /// Builds the matrix whose row `i` is the expansion of `row_of(index[i])`
    /// in the basis indexed by `index`.
    pub fn from_rows(
        degree: usize,
        index: Vec<Composition>,
        mut row_of: impl FnMut(&Composition) -> Expansion<Composition>,
    ) -> Self {
        let position: HashMap<Composition, usize> =
            index.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let rows = index
            .iter()
            .map(|c| {
                row_of(c)
                    .iter()
                    .map(|(k, v)| {
                        let j = *position
                            .get(k)
                            .unwrap_or_else(|| panic!("{k} not indexed in degree {degree}"));
                        (j, v.clone())
                    })
                    .collect()
            })
            .collect();
        TransitionMatrix { degree, index, position, rows }
    }

    pub fn from_dense(degree: usize, index: Vec<Composition>, dense: Vec<Vec<Rational>>) -> Self {
        let position: HashMap<Composition, usize> =
            index.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let rows = dense
            .into_iter()
            .map(|r| r.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        TransitionMatrix { degree, index, position, rows }
    }

    pub fn identity(degree: usize, index: Vec<Composition>) -> Self {
        let n = index.len();
        let dense = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Self::from_dense(degree, index, dense)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn index(&self) -> &[Composition] {
        &self.index
    }

    pub fn size(&self) -> usize {
        self.index.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.rows[i].get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    /// Row of `key` as an expansion over the index.
    pub fn row(&self, key: &Composition) -> Option<Expansion<Composition>> {
        let i = *self.position.get(key)?;
        Some(self.rows[i].iter().map(|(&j, v)| (self.index[j].clone(), v.clone())).collect())
    }

    /// Column of `key` as an expansion over the index.
    pub fn column(&self, key: &Composition) -> Option<Expansion<Composition>> {
        let j = *self.position.get(key)?;
        Some(
            self.rows
                .iter()
                .enumerate()
                .filter_map(|(i, r)| r.get(&j).map(|v| (self.index[i].clone(), v.clone())))
                .collect(),
        )
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![BTreeMap::new(); self.size()];
        for (i, r) in self.rows.iter().enumerate() {
            for (&j, v) in r {
                rows[j].insert(i, v.clone());
            }
        }
        TransitionMatrix {
            degree: self.degree,
            index: self.index.clone(),
            position: self.position.clone(),
            rows,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.index != other.index {
            return Err(AlgebraError::IndexMismatch);
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
                for (&k, a) in r {
                    for (&j, b) in &other.rows[k] {
                        *out.entry(j).or_insert_with(Rational::zero) += a * b;
                    }
                }
                out.retain(|_, v| !v.is_zero());
                out
            })
            .collect();
        Ok(TransitionMatrix {
            degree: self.degree,
            index: self.index.clone(),
            position: self.position.clone(),
            rows,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.len() == 1 && r.get(&i).is_some_and(|v| v.is_one()))
    }

    fn is_lower_unitriangular(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| {
            r.get(&i).is_some_and(|v| v.is_one()) && r.keys().all(|&j| j <= i)
        })
    }

    /// Exact inverse of a lower or upper unitriangular matrix.
    pub fn invert_unitriangular(&self) -> Result<Self, AlgebraError> {
        if self.is_lower_unitriangular() {
            return Ok(self.invert_lower());
        }
        let t = self.transpose();
        if t.is_lower_unitriangular() {
            return Ok(t.invert_lower().transpose());
        }
        Err(AlgebraError::NotUnitriangular(format!(
            "degree {} matrix of size {}",
            self.degree,
            self.size()
        )))
    }

    // Forward substitution: X[i] = e_i - Σ_{j<i} L[i][j] X[j].
    fn invert_lower(&self) -> Self {
        let n = self.size();
        let mut inv: Vec<BTreeMap<usize, Rational>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
            row.insert(i, Rational::one());
            for (&j, l) in self.rows[i].range(..i) {
                for (&k, x) in &inv[j] {
                    *row.entry(k).or_insert_with(Rational::zero) -= l * x;
                }
            }
            row.retain(|_, v| !v.is_zero());
            inv.push(row);
        }
        TransitionMatrix {
            degree: self.degree,
            index: self.index.clone(),
            position: self.position.clone(),
            rows: inv,
        }
    }
}

/// A graded connected bialgebra presented on a basis, with a (possibly
/// overridden) antipode.
pub trait GradedHopf {
    type Key: Clone + Ord + Hash + Debug;

    fn degree(&self, key: &Self::Key) -> usize;

    /// Index of the unit, the unique basis element of degree 0.
    fn unit(&self) -> Self::Key;

    fn product(&self, a: &Self::Key, b: &Self::Key) -> Expansion<Self::Key>;

    fn coproduct(&self, a: &Self::Key) -> TensorExpansion<Self::Key>;

    /// Basis indices of one degree.
    fn basis(&self, degree: usize) -> Vec<Self::Key>;

    fn antipode(&self, a: &Self::Key) -> Expansion<Self::Key> {
        antipode_recursive(self, &Expansion::basis(a.clone()))
    }

    fn mul(&self, x: &Expansion<Self::Key>, y: &Expansion<Self::Key>) -> Expansion<Self::Key> {
        bilinear(x, y, |a, b| self.product(a, b))
    }

    fn comul(&self, x: &Expansion<Self::Key>) -> TensorExpansion<Self::Key> {
        x.linear_map(|a| self.coproduct(a))
    }

    fn apply_antipode(&self, x: &Expansion<Self::Key>) -> Expansion<Self::Key> {
        x.linear_map(|a| self.antipode(a))
    }

    fn counit(&self, x: &Expansion<Self::Key>) -> Rational {
        x.coeff(&self.unit())
    }

    /// `(Δ ⊗ id) ∘ Δ`, flattened to triples.
    fn double_coproduct(
        &self,
        x: &Expansion<Self::Key>,
    ) -> Expansion<(Self::Key, Self::Key, Self::Key)> {
        self.comul(x).linear_map(|(a, b)| {
            self.coproduct(a)
                .linear_map(|(l, m)| Expansion::basis((l.clone(), m.clone(), b.clone())))
        })
    }
}

/// The antipode of a graded connected bialgebra from the recursion
/// `S(x) = -Σ S(x′) x″` over the coproduct terms with `deg x′ < deg x`.
pub fn antipode_recursive<H: GradedHopf + ?Sized>(
    h: &H,
    x: &Expansion<H::Key>,
) -> Expansion<H::Key> {
    let mut memo = HashMap::new();
    x.linear_map(|k| antipode_memo(h, k, &mut memo))
}

fn antipode_memo<H: GradedHopf + ?Sized>(
    h: &H,
    key: &H::Key,
    memo: &mut HashMap<H::Key, Expansion<H::Key>>,
) -> Expansion<H::Key> {
    if let Some(v) = memo.get(key) {
        return v.clone();
    }
    let n = h.degree(key);
    let result = if n == 0 {
        Expansion::basis(key.clone())
    } else {
        let mut acc = Expansion::zero();
        for ((l, r), c) in h.coproduct(key).iter() {
            let dl = h.degree(l);
            assert_eq!(dl + h.degree(r), n, "coproduct of {key:?} is not graded");
            if dl == n {
                assert!(
                    l == key && *r == h.unit() && c.is_one(),
                    "degree-{n} left leg of the coproduct of {key:?} is not {key:?}⊗1"
                );
                continue;
            }
            let s = antipode_memo(h, l, memo);
            acc.add_scaled(&h.mul(&s, &Expansion::basis(r.clone())), &-c.clone());
        }
        acc
    };
    memo.insert(key.clone(), result.clone());
    result
}

/// A failed Hopf-algebra law together with the offending input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomFailure {
    pub law: &'static str,
    pub input: String,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails on {}", self.law, self.input)
    }
}

pub fn check_coassociativity<H: GradedHopf + ?Sized>(h: &H, key: &H::Key) -> Result<(), AxiomFailure> {
    let delta = h.coproduct(key);
    let left: Expansion<(H::Key, H::Key, H::Key)> = delta.linear_map(|(a, b)| {
        h.coproduct(a)
            .linear_map(|(x, y)| Expansion::basis((x.clone(), y.clone(), b.clone())))
    });
    let right: Expansion<(H::Key, H::Key, H::Key)> = delta.linear_map(|(a, b)| {
        h.coproduct(b)
            .linear_map(|(x, y)| Expansion::basis((a.clone(), x.clone(), y.clone())))
    });
    if left == right {
        Ok(())
    } else {
        Err(AxiomFailure { law: "coassociativity", input: format!("{key:?}") })
    }
}

pub fn check_counit<H: GradedHopf + ?Sized>(h: &H, key: &H::Key) -> Result<(), AxiomFailure> {
    let delta = h.coproduct(key);
    let unit = h.unit();
    let left: Expansion<H::Key> = delta.linear_map(|(a, b)| {
        if *a == unit { Expansion::basis(b.clone()) } else { Expansion::zero() }
    });
    let right: Expansion<H::Key> = delta.linear_map(|(a, b)| {
        if *b == unit { Expansion::basis(a.clone()) } else { Expansion::zero() }
    });
    let expect = Expansion::basis(key.clone());
    if left == expect && right == expect {
        Ok(())
    } else {
        Err(AxiomFailure { law: "counit", input: format!("{key:?}") })
    }
}

/// `Δ(ab) = Δ(a)Δ(b)`.
pub fn check_compatibility<H: GradedHopf + ?Sized>(
    h: &H,
    a: &H::Key,
    b: &H::Key,
) -> Result<(), AxiomFailure> {
    let lhs = h.comul(&h.product(a, b));
    let rhs = tensor_product(&h.coproduct(a), &h.coproduct(b), |x, y| h.product(x, y));
    if lhs == rhs {
        Ok(())
    } else {
        Err(AxiomFailure { law: "bialgebra compatibility", input: format!("{a:?} * {b:?}") })
    }
}

/// `m(S⊗id)Δ = m(id⊗S)Δ = η∘ε`.
pub fn check_antipode<H: GradedHopf + ?Sized>(h: &H, key: &H::Key) -> Result<(), AxiomFailure> {
    let delta = h.coproduct(key);
    let expect = if h.degree(key) == 0 {
        Expansion::basis(h.unit())
    } else {
        Expansion::zero()
    };
    let left = delta.linear_map(|(a, b)| h.mul(&h.antipode(a), &Expansion::basis(b.clone())));
    let right = delta.linear_map(|(a, b)| h.mul(&Expansion::basis(a.clone()), &h.antipode(b)));
    if left == expect && right == expect {
        Ok(())
    } else {
        Err(AxiomFailure { law: "antipode", input: format!("{key:?}") })
    }
}

pub fn check_associativity<H: GradedHopf + ?Sized>(
    h: &H,
    a: &H::Key,
    b: &H::Key,
    c: &H::Key,
) -> Result<(), AxiomFailure> {
    let ab = h.product(a, b);
    let bc = h.product(b, c);
    let lhs = h.mul(&ab, &Expansion::basis(c.clone()));
    let rhs = h.mul(&Expansion::basis(a.clone()), &bc);
    if lhs == rhs {
        Ok(())
    } else {
        Err(AxiomFailure { law: "associativity", input: format!("{a:?} * {b:?} * {c:?}") })
    }
}

/// Every basis index of degree at most `max_degree`.
pub fn basis_up_to<H: GradedHopf + ?Sized>(h: &H, max_degree: usize) -> Vec<H::Key> {
    (0..=max_degree).flat_map(|n| h.basis(n)).collect()
}

/// Runs coassociativity, counit, and antipode on every basis element of
/// degree ≤ `max_degree`, and compatibility on every pair of total degree
/// ≤ `max_degree`. Returns all failures.
pub fn check_hopf_axioms<H: GradedHopf + ?Sized>(h: &H, max_degree: usize) -> Vec<AxiomFailure> {
    let mut failures = Vec::new();
    let keys = basis_up_to(h, max_degree);
    for k in &keys {
        failures.extend(check_coassociativity(h, k).err());
        failures.extend(check_counit(h, k).err());
        failures.extend(check_antipode(h, k).err());
    }
    for a in &keys {
        for b in &keys {
            if h.degree(a) + h.degree(b) <= max_degree {
                failures.extend(check_compatibility(h, a, b).err());
            }
        }
    }
    failures
}
