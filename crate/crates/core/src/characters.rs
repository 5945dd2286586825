//! Characters of graded connected Hopf algebras: multiplicative linear
//! functionals to the rationals, forming a group under convolution.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Expansion, GradedHopf, Rational, TensorExpansion};
use crate::composition::{factorial, Composition};
use crate::qsym::{s_expand, MonomialQSym, QSymBasis, QSymElement, ShuffleQSym};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("characters live on different algebras ({0} vs {1})")]
    AlgebraMismatch(String, String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
}

type Eval<K> = dyn Fn(&K) -> Rational + Send + Sync;

/// A character given by its values on the basis of `H`. Values are memoized.
pub struct Character<H: GradedHopf> {
    algebra: Arc<H>,
    name: String,
    eval: Arc<Eval<H::Key>>,
    memo: Arc<Mutex<HashMap<H::Key, Rational>>>,
}

impl<H: GradedHopf> Clone for Character<H> {
    fn clone(&self) -> Self {
        Character {
            algebra: Arc::clone(&self.algebra),
            name: self.name.clone(),
            eval: Arc::clone(&self.eval),
            memo: Arc::clone(&self.memo),
        }
    }
}

impl<H: GradedHopf> fmt::Debug for Character<H> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Character").field("name", &self.name).finish()
    }
}

impl<H> Character<H>
where
    H: GradedHopf + PartialEq + fmt::Debug + Send + Sync + 'static,
    H::Key: Send + Sync + 'static,
{
    pub fn new(
        algebra: Arc<H>,
        name: impl Into<String>,
        eval: impl Fn(&H::Key) -> Rational + Send + Sync + 'static,
    ) -> Self {
        Character {
            algebra,
            name: name.into(),
            eval: Arc::new(eval),
            memo: Arc::default(),
        }
    }

    /// The counit `ε`, neutral for convolution.
    pub fn counit(algebra: Arc<H>) -> Self {
        let h = Arc::clone(&algebra);
        Character::new(algebra, "epsilon", move |k| {
            if h.degree(k) == 0 { Rational::one() } else { Rational::zero() }
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<H> {
        &self.algebra
    }

    pub fn evaluate(&self, key: &H::Key) -> Rational {
        if let Some(v) = self.memo.lock().expect("character memo poisoned").get(key) {
            return v.clone();
        }
        let v = (self.eval)(key);
        self.memo
            .lock()
            .expect("character memo poisoned")
            .insert(key.clone(), v.clone());
        v
    }

    pub fn evaluate_expansion(&self, x: &Expansion<H::Key>) -> Rational {
        x.evaluate(|k| self.evaluate(k))
    }

    fn same_algebra(&self, other: &Self) -> Result<(), CharacterError> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(CharacterError::AlgebraMismatch(
                format!("{:?}", self.algebra),
                format!("{:?}", other.algebra),
            ))
        }
    }

    /// `(χ₁χ₂)(x) = Σ χ₁(x₁) χ₂(x₂)` over `Δx`.
    pub fn convolve(&self, other: &Self) -> Result<Self, CharacterError> {
        self.same_algebra(other)?;
        let (a, b, h) = (self.clone(), other.clone(), Arc::clone(&self.algebra));
        Ok(Character::new(
            Arc::clone(&self.algebra),
            format!("({})*({})", self.name, other.name),
            move |k| {
                h.coproduct(k).evaluate(|(l, r)| {
                    let left = a.evaluate(l);
                    if left.is_zero() {
                        return left;
                    }
                    left * b.evaluate(r)
                })
            },
        ))
    }

    /// `χ⁻¹ = χ ∘ S`.
    pub fn inverse(&self) -> Self {
        let (a, h) = (self.clone(), Arc::clone(&self.algebra));
        Character::new(Arc::clone(&self.algebra), format!("({})^-1", self.name), move |k| {
            a.evaluate_expansion(&h.antipode(k))
        })
    }

    /// `χ̄ = (-1)^n χ` on degree `n`.
    pub fn bar(&self) -> Self {
        let (a, h) = (self.clone(), Arc::clone(&self.algebra));
        Character::new(Arc::clone(&self.algebra), format!("bar({})", self.name), move |k| {
            let v = a.evaluate(k);
            if h.degree(k) % 2 == 1 { -v } else { v }
        })
    }

    /// `χ₁ - χ₂` as a linear functional (not a character in general).
    pub fn difference(&self, other: &Self) -> impl Fn(&H::Key) -> Rational + '_ {
        let other = other.clone();
        move |k| self.evaluate(k) - other.evaluate(k)
    }
}

/// `ζ_QSym(M_α) = 1` when `ℓ(α) ≤ 1`, else `0`.
pub fn zeta_qsym() -> Character<MonomialQSym> {
    Character::new(Arc::new(MonomialQSym), "zeta", |a: &Composition| {
        if a.len() <= 1 { Rational::one() } else { Rational::zero() }
    })
}

fn zeta_monomial_value(x: &Expansion<Composition>) -> Rational {
    x.evaluate(|a| if a.len() <= 1 { Rational::one() } else { Rational::zero() })
}

/// `ζ_QSym` on the shuffle basis, evaluated by expanding into monomials.
pub fn zeta_qsym_shuffle() -> Character<ShuffleQSym> {
    Character::new(Arc::new(ShuffleQSym), "zeta", |a: &Composition| {
        zeta_monomial_value(&s_expand(a))
    })
}

/// `ζ_QSym` on an element in either basis.
pub fn zeta_qsym_eval(x: &QSymElement) -> Rational {
    match x.basis {
        QSymBasis::M => zeta_monomial_value(&x.terms),
        QSymBasis::S => x.terms.evaluate(|a| zeta_monomial_value(&s_expand(a))),
    }
}

/// `ν = ζ̄⁻¹ ζ` on the shuffle basis.
pub fn nu_shuffle() -> Character<ShuffleQSym> {
    let zeta = zeta_qsym_shuffle();
    zeta.inverse()
        .bar()
        .convolve(&zeta)
        .expect("same algebra")
        .renamed("nu")
}

impl<H: GradedHopf> Character<H> {
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

fn inv_factorials(a: usize, b: usize) -> Rational {
    Rational::new(BigInt::one(), factorial(a) * factorial(b))
}

/// Closed form of `ζ_QSym(S_α)`: `1/(p!(ℓ-p)!)` when the only parity change is
/// even-to-odd at `p`, `1/ℓ!` with no parity change, else `0`.
pub fn zeta_on_s_closed(alpha: &Composition) -> Rational {
    let (ote, eto) = alpha.parity_sets();
    let l = alpha.len();
    match (ote.len(), eto.iter().next()) {
        (0, None) => inv_factorials(l, 0),
        (0, Some(&p)) if eto.len() == 1 => inv_factorials(p, l - p),
        _ => Rational::zero(),
    }
}

/// Closed form of `ζ̄⁻¹(S_α)`: the mirror of [`zeta_on_s_closed`] with the
/// parity roles swapped and sign `(-1)^{|α|+ℓ(α)}`.
pub fn zetabar_inv_on_s_closed(alpha: &Composition) -> Rational {
    let (ote, eto) = alpha.parity_sets();
    let l = alpha.len();
    let magnitude = match (eto.len(), ote.iter().next()) {
        (0, None) => inv_factorials(l, 0),
        (0, Some(&q)) if ote.len() == 1 => inv_factorials(q, l - q),
        _ => return Rational::zero(),
    };
    if (alpha.degree() + l) % 2 == 1 { -magnitude } else { magnitude }
}

/// `ζ̄⁻¹(S_α)` from first principles: the recursive antipode of the monomial
/// expansion of `S_α`, then `ζ_QSym`, then the degree sign.
pub fn zetabar_inv_first_principles(alpha: &Composition) -> Rational {
    zeta_qsym().inverse().bar().evaluate_expansion(&s_expand(alpha))
}

/// Outcome of the odd-subalgebra membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCriterion<K: Ord> {
    pub passes: bool,
    /// `(id ⊗ (χ̄⁻¹ - χ) ⊗ id) Δ⁽²⁾(x)`; zero exactly when the test passes.
    pub witness: TensorExpansion<K>,
}

/// Applies the middle functional `χ̄⁻¹ - χ` to `Δ⁽²⁾(x) = (Δ ⊗ id)Δ(x)` for a
/// homogeneous `x`.
pub fn odd_criterion<H>(
    x: &Expansion<H::Key>,
    chi: &Character<H>,
) -> Result<OddCriterion<H::Key>, CharacterError>
where
    H: GradedHopf + PartialEq + fmt::Debug + Send + Sync + 'static,
    H::Key: Send + Sync + 'static,
{
    let h = chi.algebra();
    let mut degrees = x.keys().map(|k| h.degree(k));
    if let Some(d) = degrees.next() {
        if degrees.any(|e| e != d) {
            return Err(CharacterError::NotHomogeneous);
        }
    }
    let bar_inv = chi.inverse().bar();
    let middle = bar_inv.difference(chi);
    let mut witness = TensorExpansion::zero();
    for ((l, m, r), c) in h.double_coproduct(x).iter() {
        let v = middle(m);
        if !v.is_zero() {
            witness.add_term((l.clone(), r.clone()), c * v);
        }
    }
    Ok(OddCriterion { passes: witness.is_zero(), witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::composition::{enumerate, enumerate_up_to};
    use crate::sym::{iota, sym_basis_element, SymBasis};

    fn c(p: &[usize]) -> Composition {
        Composition::from_parts(p)
    }

    #[test]
    fn zeta_examples() {
        let zeta = zeta_qsym();
        assert_eq!(zeta.evaluate(&c(&[2, 1])), int(0));
        assert_eq!(zeta.evaluate(&c(&[])), int(1));
        let p3 = iota(&sym_basis_element(SymBasis::P, &c(&[3])));
        assert_eq!(zeta.evaluate_expansion(&p3), rat(1, 3));
    }

    #[test]
    fn zeta_is_multiplicative() {
        let zeta = zeta_qsym();
        let keys = enumerate_up_to(6);
        for a in &keys {
            for b in &keys {
                if a.degree() + b.degree() > 6 {
                    continue;
                }
                let prod = MonomialQSym.product(a, b);
                assert_eq!(zeta.evaluate_expansion(&prod), zeta.evaluate(a) * zeta.evaluate(b));
            }
        }
    }

    #[test]
    fn group_laws() {
        let zeta = zeta_qsym();
        let eps = Character::counit(Arc::clone(zeta.algebra()));
        let inv = zeta.inverse();
        let left = eps.convolve(&zeta).unwrap();
        let right = zeta.convolve(&eps).unwrap();
        let cancel = zeta.convolve(&inv).unwrap();
        let cancel_left = inv.convolve(&zeta).unwrap();
        let bar = zeta.bar();
        let assoc_l = zeta.convolve(&bar).unwrap().convolve(&inv).unwrap();
        let assoc_r = zeta.convolve(&bar.convolve(&inv).unwrap()).unwrap();
        let eps_inv = eps.inverse();
        for a in enumerate_up_to(6) {
            assert_eq!(left.evaluate(&a), zeta.evaluate(&a));
            assert_eq!(right.evaluate(&a), zeta.evaluate(&a));
            assert_eq!(cancel.evaluate(&a), eps.evaluate(&a), "{a}");
            assert_eq!(cancel_left.evaluate(&a), eps.evaluate(&a));
            assert_eq!(assoc_l.evaluate(&a), assoc_r.evaluate(&a));
            assert_eq!(eps_inv.evaluate(&a), eps.evaluate(&a));
            assert_eq!(bar.bar().evaluate(&a), zeta.evaluate(&a));
        }
        assert_eq!(cancel.evaluate(&c(&[2])), int(0));
        assert_eq!(inv.evaluate(&c(&[1])), int(-1));
    }

    #[test]
    fn bar_examples() {
        let bar = zeta_qsym().bar();
        assert_eq!(bar.evaluate(&c(&[2])), int(1));
        assert_eq!(bar.evaluate(&c(&[3])), int(-1));
    }

    #[test]
    fn algebra_mismatch_is_rejected() {
        use crate::freealg::{GradedAlphabet, WordAlgebra, WordFlavor};
        let a = Arc::new(WordAlgebra::new(GradedAlphabet::from_counts(&[(1, 1)]), WordFlavor::Shuffle));
        let b = Arc::new(WordAlgebra::new(GradedAlphabet::from_counts(&[(1, 2)]), WordFlavor::Shuffle));
        let x = Character::counit(a);
        let y = Character::counit(b);
        assert!(matches!(x.convolve(&y), Err(CharacterError::AlgebraMismatch(_, _))));
    }

    #[test]
    fn nu_examples() {
        let nu = nu_shuffle();
        assert_eq!(nu.evaluate(&c(&[1, 1])), int(2));
        assert_eq!(nu.evaluate(&c(&[2])), int(0));
        assert_eq!(nu.evaluate(&c(&[3])), int(2));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(zeta_on_s_closed(&c(&[2, 1])), int(1));
        assert_eq!(zeta_on_s_closed(&c(&[1, 1])), rat(1, 2));
        assert_eq!(zeta_on_s_closed(&c(&[1, 2])), int(0));
        assert_eq!(zetabar_inv_on_s_closed(&c(&[2])), int(-1));
        assert_eq!(zetabar_inv_on_s_closed(&c(&[1, 1])), rat(1, 2));
        assert_eq!(zetabar_inv_on_s_closed(&c(&[2, 1])), int(0));
    }

    #[test]
    fn closed_forms_match_first_principles_through_degree_six() {
        let zeta = zeta_qsym();
        for a in enumerate_up_to(6) {
            assert_eq!(zeta.evaluate_expansion(&s_expand(&a)), zeta_on_s_closed(&a), "{a}");
            assert_eq!(zetabar_inv_first_principles(&a), zetabar_inv_on_s_closed(&a), "{a}");
        }
    }

    #[test]
    fn odd_criterion_examples() {
        let zeta = zeta_qsym_shuffle();
        let one = |p: &[usize]| Expansion::basis(c(p));
        assert!(odd_criterion(&one(&[1, 1]), &zeta).unwrap().passes);
        let fail = odd_criterion(&one(&[2]), &zeta).unwrap();
        assert!(!fail.passes);
        assert_eq!(fail.witness, Expansion::term((c(&[]), c(&[])), int(-2)));
        assert!(odd_criterion(&one(&[]), &zeta).unwrap().passes);
        let mixed = &one(&[1]) + &one(&[2]);
        assert_eq!(odd_criterion(&mixed, &zeta), Err(CharacterError::NotHomogeneous));
        for n in 0..=5 {
            for a in enumerate(n, true) {
                assert!(odd_criterion(&one(a.parts()), &zeta).unwrap().passes, "{a}");
            }
        }
    }
}
