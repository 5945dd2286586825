//! Quasisymmetric functions in the monomial (`M`) and shuffle (`S`) bases.
//!
//! `S_α = Σ c_α^β M_β` over `odd_min(α) ≤ β ≤ α`. In the `S` basis the
//! product is the shuffle of compositions, the coproduct is deconcatenation
//! and the antipode is `S_α ↦ (-1)^{ℓ(α)} S_{rev α}`; these formulas are used
//! directly, and the `M`-basis route is kept as an independent cross-check.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    antipode_recursive, tensor_map, Expansion, GradedHopf, Rational, Tagged, TensorExpansion,
    TransitionMatrix,
};
use crate::composition::{self, quasi_shuffle, shuffle, Composition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QSymBasis {
    M,
    S,
}

impl fmt::Display for QSymBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QSymBasis::M => "M",
            QSymBasis::S => "S",
        })
    }
}

impl FromStr for QSymBasis {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "M" => Ok(QSymBasis::M),
            "S" => Ok(QSymBasis::S),
            other => Err(format!("unknown QSym basis {other:?}")),
        }
    }
}

pub type QSymElement = Tagged<QSymBasis, Composition>;

/// QSym presented on the monomial basis.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MonomialQSym;

/// QSym presented on the shuffle basis.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ShuffleQSym;

fn deconcatenate(a: &Composition) -> TensorExpansion<Composition> {
    a.deconcatenations().map(|pair| (pair, Rational::one())).collect()
}

impl GradedHopf for MonomialQSym {
    type Key = Composition;

    fn degree(&self, key: &Composition) -> usize {
        key.degree()
    }

    fn unit(&self) -> Composition {
        Composition::empty()
    }

    fn product(&self, a: &Composition, b: &Composition) -> Expansion<Composition> {
        quasi_shuffle(a, b)
            .iter()
            .map(|(c, m)| (c.clone(), Rational::from_integer(m.into())))
            .collect()
    }

    fn coproduct(&self, a: &Composition) -> TensorExpansion<Composition> {
        deconcatenate(a)
    }

    fn basis(&self, degree: usize) -> Vec<Composition> {
        composition::enumerate(degree, false)
    }
}

impl GradedHopf for ShuffleQSym {
    type Key = Composition;

    fn degree(&self, key: &Composition) -> usize {
        key.degree()
    }

    fn unit(&self) -> Composition {
        Composition::empty()
    }

    fn product(&self, a: &Composition, b: &Composition) -> Expansion<Composition> {
        shuffle(a, b)
            .iter()
            .map(|(c, m)| (c.clone(), Rational::from_integer(m.into())))
            .collect()
    }

    fn coproduct(&self, a: &Composition) -> TensorExpansion<Composition> {
        deconcatenate(a)
    }

    fn basis(&self, degree: usize) -> Vec<Composition> {
        composition::enumerate(degree, false)
    }

    fn antipode(&self, a: &Composition) -> Expansion<Composition> {
        let sign = if a.len() % 2 == 0 { Rational::one() } else { -Rational::one() };
        Expansion::term(a.reversed(), sign)
    }
}

pub fn m_product(x: &Expansion<Composition>, y: &Expansion<Composition>) -> Expansion<Composition> {
    MonomialQSym.mul(x, y)
}

pub fn m_coproduct(x: &Expansion<Composition>) -> TensorExpansion<Composition> {
    MonomialQSym.comul(x)
}

pub fn s_product(x: &Expansion<Composition>, y: &Expansion<Composition>) -> Expansion<Composition> {
    ShuffleQSym.mul(x, y)
}

pub fn s_coproduct(x: &Expansion<Composition>) -> TensorExpansion<Composition> {
    ShuffleQSym.comul(x)
}

/// `S_α` in the monomial basis.
pub fn s_expand(alpha: &Composition) -> Expansion<Composition> {
    alpha
        .interval()
        .into_iter()
        .map(|beta| {
            let c = alpha.coeff(&beta).expect("interval element");
            (beta, c)
        })
        .collect()
}

/// Per-degree `S → M` matrix and its inverse.
#[derive(Debug)]
pub struct ShuffleTransition {
    pub to_monomial: TransitionMatrix,
    pub to_shuffle: TransitionMatrix,
}

type TransitionCache = RwLock<HashMap<usize, Arc<ShuffleTransition>>>;

fn cache() -> &'static TransitionCache {
    static CACHE: OnceLock<TransitionCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The degree-`n` transition matrices, computed once and shared. Rows and
/// columns follow the canonical composition order, in which `S → M` is lower
/// unitriangular.
pub fn transition(n: usize) -> Arc<ShuffleTransition> {
    if let Some(t) = cache().read().expect("transition cache poisoned").get(&n) {
        return Arc::clone(t);
    }
    // Computed outside the lock; concurrent callers may duplicate the work but
    // always insert identical matrices.
    let index = composition::enumerate(n, false);
    let to_monomial = TransitionMatrix::from_rows(n, index, s_expand);
    let to_shuffle = to_monomial
        .invert_unitriangular()
        .expect("shuffle-to-monomial matrix is unitriangular");
    let fresh = Arc::new(ShuffleTransition { to_monomial, to_shuffle });
    let mut guard = cache().write().expect("transition cache poisoned");
    Arc::clone(guard.entry(n).or_insert(fresh))
}

/// `M_α` in the shuffle basis.
pub fn m_in_s(alpha: &Composition) -> Expansion<Composition> {
    transition(alpha.degree())
        .to_shuffle
        .row(alpha)
        .expect("composition indexed in its own degree")
}

pub fn s_to_m(x: &Expansion<Composition>) -> Expansion<Composition> {
    x.linear_map(s_expand)
}

pub fn m_to_s(x: &Expansion<Composition>) -> Expansion<Composition> {
    x.linear_map(m_in_s)
}

pub fn convert(x: &QSymElement, target: QSymBasis) -> QSymElement {
    let terms = match (x.basis, target) {
        (a, b) if a == b => x.terms.clone(),
        (QSymBasis::S, QSymBasis::M) => s_to_m(&x.terms),
        (QSymBasis::M, QSymBasis::S) => m_to_s(&x.terms),
        _ => unreachable!(),
    };
    QSymElement::new(target, terms)
}

pub fn convert_tensor(t: &TensorExpansion<Composition>, from: QSymBasis, to: QSymBasis) -> TensorExpansion<Composition> {
    let leg = |k: &Composition| convert(&QSymElement::basis_element(from, k.clone()), to).terms;
    tensor_map(t, leg, leg)
}

/// Product of two elements, computed in the basis of `x` (`y` is converted).
pub fn product(x: &QSymElement, y: &QSymElement) -> QSymElement {
    let y = convert(y, x.basis);
    let terms = match x.basis {
        QSymBasis::M => m_product(&x.terms, &y.terms),
        QSymBasis::S => s_product(&x.terms, &y.terms),
    };
    QSymElement::new(x.basis, terms)
}

/// Coproduct in the basis of `x`; both legs are in that basis.
pub fn coproduct(x: &QSymElement) -> TensorExpansion<Composition> {
    match x.basis {
        QSymBasis::M => m_coproduct(&x.terms),
        QSymBasis::S => s_coproduct(&x.terms),
    }
}

/// Antipode: the reversal formula on `S`, the graded recursion on `M`.
pub fn antipode(x: &QSymElement) -> QSymElement {
    let terms = match x.basis {
        QSymBasis::M => antipode_recursive(&MonomialQSym, &x.terms),
        QSymBasis::S => ShuffleQSym.apply_antipode(&x.terms),
    };
    QSymElement::new(x.basis, terms)
}

/// Coefficient of the unit; `S_() = M_()` so the basis does not matter.
pub fn counit(x: &QSymElement) -> Rational {
    x.terms.coeff(&Composition::empty())
}

/// Homogeneous component of degree `n`.
pub fn degree_slice(x: &Expansion<Composition>, n: usize) -> Expansion<Composition> {
    x.filter(|c| c.degree() == n)
}

pub fn is_homogeneous(x: &Expansion<Composition>) -> bool {
    let mut degrees = x.keys().map(Composition::degree);
    match degrees.next() {
        None => true,
        Some(d) => degrees.all(|e| e == d),
    }
}
