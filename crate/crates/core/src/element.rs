//! Elements of QSym, NSym and Sym behind one type, with the operations the
//! command line exposes.

use thiserror::Error;

use crate::algebra::{Rational, TensorExpansion};
use crate::characters::zeta_qsym_eval;
use crate::composition::Composition;
use crate::expr::{AlgebraKind, Expr, Tag};
use crate::qsym::{self, QSymBasis, QSymElement};
use crate::sym::{
    iota, nsym_antipode, nsym_convert, nsym_coproduct_in, nsym_product, pair, sym_antipode, sym_convert,
    sym_coproduct, sym_pairing, sym_product, NSymBasis, NSymElement, SymBasis, SymElement,
};
use crate::theta::{theta_nsym, theta_qsym, theta_sym};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementError {
    #[error("operands live in different algebras ({0} and {1})")]
    AlgebraMismatch(AlgebraKind, AlgebraKind),
    #[error("basis {tag} does not belong to {algebra}")]
    ForeignBasis { tag: Tag, algebra: AlgebraKind },
    #[error("cannot pair {0} with {1}")]
    NoPairing(AlgebraKind, AlgebraKind),
    #[error("no canonical character on {0}")]
    NoCharacter(AlgebraKind),
}

/// A typed element of one of the three composition-indexed algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Element {
    QSym(QSymElement),
    NSym(NSymElement),
    Sym(SymElement),
}

impl Element {
    pub fn to_expr(&self) -> Expr {
        match self {
            Element::QSym(x) => x.into(),
            Element::NSym(x) => x.into(),
            Element::Sym(x) => x.into(),
        }
    }

    pub fn kind(&self) -> AlgebraKind {
        match self {
            Element::QSym(_) => AlgebraKind::QSym,
            Element::NSym(_) => AlgebraKind::NSym,
            Element::Sym(_) => AlgebraKind::Sym,
        }
    }

    pub fn tag(&self) -> Tag {
        match self {
            Element::QSym(x) => x.basis.into(),
            Element::NSym(x) => x.basis.into(),
            Element::Sym(x) => x.basis.into(),
        }
    }

    /// Change of basis within the same algebra.
    pub fn convert(&self, tag: Tag) -> Result<Element, ElementError> {
        let foreign = || ElementError::ForeignBasis { tag, algebra: self.kind() };
        Ok(match (self, tag) {
            (Element::QSym(x), Tag::M) => Element::QSym(qsym::convert(x, QSymBasis::M)),
            (Element::QSym(x), Tag::S) => Element::QSym(qsym::convert(x, QSymBasis::S)),
            (Element::NSym(x), Tag::H) => Element::NSym(nsym_convert(x, NSymBasis::H)),
            (Element::NSym(x), Tag::SD) => Element::NSym(nsym_convert(x, NSymBasis::SD)),
            (Element::Sym(x), Tag::P) => Element::Sym(sym_convert(x, SymBasis::P)),
            (Element::Sym(x), Tag::LowerH) => Element::Sym(sym_convert(x, SymBasis::H)),
            _ => return Err(foreign()),
        })
    }

    /// Product, returned in the basis of `self`.
    pub fn mul(&self, other: &Element) -> Result<Element, ElementError> {
        Ok(match (self, other) {
            (Element::QSym(x), Element::QSym(y)) => Element::QSym(qsym::product(x, y)),
            (Element::NSym(x), Element::NSym(y)) => {
                let (hx, hy) = (nsym_convert(x, NSymBasis::H), nsym_convert(y, NSymBasis::H));
                let prod = NSymElement::new(NSymBasis::H, nsym_product(&hx.terms, &hy.terms));
                Element::NSym(nsym_convert(&prod, x.basis))
            }
            (Element::Sym(x), Element::Sym(y)) => Element::Sym(sym_product(x, y)),
            _ => return Err(ElementError::AlgebraMismatch(self.kind(), other.kind())),
        })
    }

    /// Coproduct with both legs in the basis of `self`.
    pub fn comul(&self) -> (Tag, TensorExpansion<Composition>) {
        let t = match self {
            Element::QSym(x) => qsym::coproduct(x),
            Element::NSym(x) => nsym_coproduct_in(x),
            Element::Sym(x) => sym_coproduct(x),
        };
        (self.tag(), t)
    }

    pub fn antipode(&self) -> Element {
        match self {
            Element::QSym(x) => Element::QSym(qsym::antipode(x)),
            Element::NSym(x) => Element::NSym(nsym_antipode(x)),
            Element::Sym(x) => Element::Sym(sym_antipode(x)),
        }
    }

    /// The theta map of the element's algebra, in the element's basis.
    pub fn theta(&self) -> Element {
        match self {
            Element::QSym(x) => Element::QSym(theta_qsym(x)),
            Element::NSym(x) => Element::NSym(theta_nsym(x)),
            Element::Sym(x) => Element::Sym(theta_sym(x)),
        }
    }

    /// `ζ_QSym`, on Sym through the embedding into QSym.
    pub fn zeta(&self) -> Result<Rational, ElementError> {
        match self {
            Element::QSym(x) => Ok(zeta_qsym_eval(x)),
            Element::Sym(x) => Ok(zeta_qsym_eval(&QSymElement::new(QSymBasis::M, iota(x)))),
            Element::NSym(_) => Err(ElementError::NoCharacter(AlgebraKind::NSym)),
        }
    }

    /// The NSym–QSym duality pairing (either order) or the Sym self-pairing.
    pub fn pair(&self, other: &Element) -> Result<Rational, ElementError> {
        match (self, other) {
            (Element::NSym(u), Element::QSym(v)) | (Element::QSym(v), Element::NSym(u)) => Ok(pair(u, v)),
            (Element::Sym(x), Element::Sym(y)) => Ok(sym_pairing(x, y)),
            _ => Err(ElementError::NoPairing(self.kind(), other.kind())),
        }
    }
}
