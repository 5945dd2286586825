//! Symmetric functions (scaled power sums `p`, complete homogeneous `h`) as a
//! subalgebra of QSym, and noncommutative symmetric functions in the `H` and
//! dual shuffle (`S*`, written `SD`) bases, with the duality pairing, the
//! forgetful projection `π: NSym → Sym` and the embedding `ι: Sym → QSym`.
//!
//! Sym elements are keyed by decreasingly sorted compositions and compared
//! through their `ι` images.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{tensor_map, tensor_product, Expansion, GradedHopf, Rational, Tagged, TensorExpansion};
use crate::composition::{self, Composition};
use crate::qsym::{self, m_product, QSymBasis, QSymElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SymBasis {
    /// Scaled power sums `p_n = M_(n) / n`.
    P,
    /// Complete homogeneous `h_n = Σ_{α⊨n} M_α`.
    H,
}

impl fmt::Display for SymBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymBasis::P => "p",
            SymBasis::H => "h",
        })
    }
}

impl FromStr for SymBasis {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "p" => Ok(SymBasis::P),
            "h" => Ok(SymBasis::H),
            other => Err(format!("unknown Sym basis {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NSymBasis {
    H,
    /// The dual shuffle basis `S*`.
    SD,
}

impl fmt::Display for NSymBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NSymBasis::H => "H",
            NSymBasis::SD => "SD",
        })
    }
}

impl FromStr for NSymBasis {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "H" => Ok(NSymBasis::H),
            "SD" => Ok(NSymBasis::SD),
            other => Err(format!("unknown NSym basis {other:?}")),
        }
    }
}

pub type SymElement = Tagged<SymBasis, Composition>;
pub type NSymElement = Tagged<NSymBasis, Composition>;

/// Builds a Sym element, sorting every key decreasingly.
pub fn sym(basis: SymBasis, terms: &Expansion<Composition>) -> SymElement {
    SymElement::new(basis, terms.map_keys(Composition::sorted_decreasing))
}

pub fn sym_basis_element(basis: SymBasis, key: &Composition) -> SymElement {
    SymElement::basis_element(basis, key.sorted_decreasing())
}

fn p_generator(n: usize) -> Expansion<Composition> {
    Expansion::term(Composition::from_parts(&[n]), Rational::new(BigInt::one(), BigInt::from(n)))
}

fn h_generator(n: usize) -> Expansion<Composition> {
    composition::enumerate(n, false)
        .into_iter()
        .map(|a| (a, Rational::one()))
        .collect()
}

/// The embedding `ι: Sym → QSym`, landing in the monomial basis.
pub fn iota(x: &SymElement) -> Expansion<Composition> {
    let generator = match x.basis {
        SymBasis::P => p_generator,
        SymBasis::H => h_generator,
    };
    x.terms.linear_map(|key| {
        key.parts()
            .iter()
            .fold(Expansion::basis(Composition::empty()), |acc, &n| m_product(&acc, &generator(n)))
    })
}

/// `p_n = (1/n) Σ_{α⊨n} (-1)^{ℓ(α)-1} α_last h_α`.
pub fn p_in_h(n: usize) -> SymElement {
    assert!(n >= 1, "p_0 is not a generator");
    let terms: Expansion<Composition> = composition::enumerate(n, false)
        .into_iter()
        .map(|a| {
            let sign = if a.len() % 2 == 1 { 1 } else { -1 };
            let last = *a.parts().last().expect("nonempty composition");
            (a, Rational::new(BigInt::from(sign * last as i64), BigInt::from(n)))
        })
        .collect();
    sym(SymBasis::H, &terms)
}

/// `h_n = Σ_{λ⊢n} (Π λ_i / z_λ) p_λ` in scaled power sums.
pub fn h_in_p(n: usize) -> SymElement {
    let mut terms = Expansion::zero();
    for a in composition::enumerate(n, false) {
        if a.sorted_decreasing() != a {
            continue;
        }
        let (_, z) = a.sort_and_z();
        let prod: BigInt = a.parts().iter().map(|&p| BigInt::from(p)).product();
        terms.add_term(a, Rational::new(prod, z));
    }
    SymElement::new(SymBasis::P, terms)
}

/// Expands multiplicatively using a generator image `gen(n)`.
fn multiplicative(
    x: &Expansion<Composition>,
    target: SymBasis,
    generator: impl Fn(usize) -> SymElement,
) -> SymElement {
    let terms = x.linear_map(|key| {
        key.parts().iter().fold(Expansion::basis(Composition::empty()), |acc, &n| {
            sym_mul_terms(&acc, &generator(n).terms)
        })
    });
    SymElement::new(target, terms)
}

fn sym_mul_terms(x: &Expansion<Composition>, y: &Expansion<Composition>) -> Expansion<Composition> {
    crate::algebra::bilinear(x, y, |a, b| Expansion::basis(a.concat(b).sorted_decreasing()))
}

pub fn sym_convert(x: &SymElement, target: SymBasis) -> SymElement {
    match (x.basis, target) {
        (a, b) if a == b => x.clone(),
        (SymBasis::P, SymBasis::H) => multiplicative(&x.terms, SymBasis::H, p_in_h),
        (SymBasis::H, SymBasis::P) => multiplicative(&x.terms, SymBasis::P, h_in_p),
        _ => unreachable!(),
    }
}

/// Commutative product, computed in the basis of `x`.
pub fn sym_product(x: &SymElement, y: &SymElement) -> SymElement {
    let y = sym_convert(y, x.basis);
    SymElement::new(x.basis, sym_mul_terms(&x.terms, &y.terms))
}

/// `⟨p_α, p_β⟩ = δ_{sort α, sort β} z_α / (Π α_i)²`, extended bilinearly.
pub fn sym_pairing(x: &SymElement, y: &SymElement) -> Rational {
    let x = sym_convert(x, SymBasis::P);
    let y = sym_convert(y, SymBasis::P);
    x.terms.evaluate(|a| {
        let cy = y.terms.coeff(a);
        if cy.is_zero() {
            return Rational::zero();
        }
        let (_, z) = a.sort_and_z();
        let prod: BigInt = a.parts().iter().map(|&p| BigInt::from(p)).product();
        Rational::new(z, &prod * &prod) * cy
    })
}

fn sym_generator_coproduct(basis: SymBasis, n: usize) -> TensorExpansion<Composition> {
    let unit = Composition::empty();
    let single = Composition::from_parts(&[n]);
    match basis {
        SymBasis::P => [((single.clone(), unit.clone()), Rational::one()), ((unit, single), Rational::one())]
            .into_iter()
            .collect(),
        SymBasis::H => (0..=n)
            .map(|i| {
                let left = if i == 0 { Composition::empty() } else { Composition::from_parts(&[i]) };
                let right = if i == n { Composition::empty() } else { Composition::from_parts(&[n - i]) };
                ((left, right), Rational::one())
            })
            .collect(),
    }
}

/// Coproduct in the basis of `x`: `p_n` is primitive and
/// `Δ(h_n) = Σ_{i+j=n} h_i ⊗ h_j`, extended multiplicatively.
pub fn sym_coproduct(x: &SymElement) -> TensorExpansion<Composition> {
    let unit = Expansion::basis((Composition::empty(), Composition::empty()));
    x.terms.linear_map(|key| {
        key.parts().iter().fold(unit.clone(), |acc, &n| {
            tensor_product(&acc, &sym_generator_coproduct(x.basis, n), |a, b| {
                Expansion::basis(a.concat(b).sorted_decreasing())
            })
        })
    })
}

/// Antipode `p_λ ↦ (-1)^{ℓ(λ)} p_λ`, returned in the basis of `x`.
pub fn sym_antipode(x: &SymElement) -> SymElement {
    let p = sym_convert(x, SymBasis::P);
    let terms = p.terms.linear_map(|k| {
        let sign = if k.len() % 2 == 0 { Rational::one() } else { -Rational::one() };
        Expansion::term(k.clone(), sign)
    });
    sym_convert(&SymElement::new(SymBasis::P, terms), x.basis)
}

/// NSym on the `H` basis: free on `H_n`, `Δ(H_n) = Σ_{i+j=n} H_i ⊗ H_j`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NSymH;

fn h_generator_coproduct(n: usize) -> TensorExpansion<Composition> {
    (0..=n)
        .map(|i| {
            let left = if i == 0 { Composition::empty() } else { Composition::from_parts(&[i]) };
            let right = if i == n { Composition::empty() } else { Composition::from_parts(&[n - i]) };
            ((left, right), Rational::one())
        })
        .collect()
}

impl GradedHopf for NSymH {
    type Key = Composition;

    fn degree(&self, key: &Composition) -> usize {
        key.degree()
    }

    fn unit(&self) -> Composition {
        Composition::empty()
    }

    fn product(&self, a: &Composition, b: &Composition) -> Expansion<Composition> {
        Expansion::basis(a.concat(b))
    }

    fn coproduct(&self, a: &Composition) -> TensorExpansion<Composition> {
        let unit = Expansion::basis((Composition::empty(), Composition::empty()));
        a.parts().iter().fold(unit, |acc, &n| {
            tensor_product(&acc, &h_generator_coproduct(n), |x, y| Expansion::basis(x.concat(y)))
        })
    }

    fn basis(&self, degree: usize) -> Vec<Composition> {
        composition::enumerate(degree, false)
    }
}

pub fn nsym_product(x: &Expansion<Composition>, y: &Expansion<Composition>) -> Expansion<Composition> {
    NSymH.mul(x, y)
}

pub fn nsym_coproduct(x: &Expansion<Composition>) -> TensorExpansion<Composition> {
    NSymH.comul(x)
}

/// `S*_α` in the `H` basis: the coefficient of `H_δ` is the coefficient of
/// `S_α` in `M_δ`, so that `⟨S*_α, S_β⟩ = δ_{α,β}`.
pub fn dual_shuffle_expand(alpha: &Composition) -> Expansion<Composition> {
    qsym::transition(alpha.degree())
        .to_shuffle
        .column(alpha)
        .expect("composition indexed in its own degree")
}

/// `H_δ` in the dual shuffle basis: the coefficient of `S*_α` is the
/// coefficient of `M_δ` in `S_α`.
pub fn h_in_dual_shuffle(delta: &Composition) -> Expansion<Composition> {
    qsym::transition(delta.degree())
        .to_monomial
        .column(delta)
        .expect("composition indexed in its own degree")
}

pub fn nsym_convert(x: &NSymElement, target: NSymBasis) -> NSymElement {
    let terms = match (x.basis, target) {
        (a, b) if a == b => x.terms.clone(),
        (NSymBasis::SD, NSymBasis::H) => x.terms.linear_map(dual_shuffle_expand),
        (NSymBasis::H, NSymBasis::SD) => x.terms.linear_map(h_in_dual_shuffle),
        _ => unreachable!(),
    };
    NSymElement::new(target, terms)
}

/// Coproduct in the basis of `x`; both legs are in that basis.
pub fn nsym_coproduct_in(x: &NSymElement) -> TensorExpansion<Composition> {
    let h = nsym_convert(x, NSymBasis::H);
    let delta = nsym_coproduct(&h.terms);
    match x.basis {
        NSymBasis::H => delta,
        NSymBasis::SD => tensor_map(&delta, h_in_dual_shuffle, h_in_dual_shuffle),
    }
}

/// Antipode, computed on `H` and returned in the basis of `x`.
pub fn nsym_antipode(x: &NSymElement) -> NSymElement {
    let h = nsym_convert(x, NSymBasis::H);
    let image = NSymElement::new(NSymBasis::H, NSymH.apply_antipode(&h.terms));
    nsym_convert(&image, x.basis)
}

/// The duality pairing with `⟨H_α, M_β⟩ = δ_{α,β}`.
pub fn pair(x: &NSymElement, y: &QSymElement) -> Rational {
    let x = nsym_convert(x, NSymBasis::H);
    let y = qsym::convert(y, QSymBasis::M);
    x.terms.evaluate(|a| y.terms.coeff(a))
}

/// The forgetful projection `H_α ↦ h_α`.
pub fn pi_project(x: &NSymElement) -> SymElement {
    let x = nsym_convert(x, NSymBasis::H);
    sym(SymBasis::H, &x.terms)
}

/// True when `x` is primitive in NSym: `Δx = 1⊗x + x⊗1`.
pub fn is_primitive_nsym(x: &Expansion<Composition>) -> bool {
    let unit = Composition::empty();
    let mut expect = TensorExpansion::zero();
    for (k, c) in x.iter() {
        expect.add_term((unit.clone(), k.clone()), c.clone());
        expect.add_term((k.clone(), unit.clone()), c.clone());
    }
    nsym_coproduct(x) == expect
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, tensor};
    use crate::composition::enumerate_up_to;

    fn c(p: &[usize]) -> Composition {
        Composition::from_parts(p)
    }

    fn e(terms: &[(&[usize], Rational)]) -> Expansion<Composition> {
        terms.iter().map(|(p, v)| (c(p), v.clone())).collect()
    }

    fn p(parts: &[usize]) -> SymElement {
        sym_basis_element(SymBasis::P, &c(parts))
    }

    fn h(parts: &[usize]) -> SymElement {
        sym_basis_element(SymBasis::H, &c(parts))
    }

    fn sd(parts: &[usize]) -> NSymElement {
        NSymElement::basis_element(NSymBasis::SD, c(parts))
    }

    fn hh(parts: &[usize]) -> NSymElement {
        NSymElement::basis_element(NSymBasis::H, c(parts))
    }

    #[test]
    fn iota_examples() {
        assert_eq!(iota(&p(&[2])), e(&[(&[2], rat(1, 2))]));
        assert_eq!(iota(&h(&[2])), e(&[(&[2], int(1)), (&[1, 1], int(1))]));
        assert_eq!(iota(&p(&[1, 1])), e(&[(&[1, 1], int(2)), (&[2], int(1))]));
    }

    #[test]
    fn sym_keys_are_sorted() {
        assert_eq!(p(&[1, 3]), p(&[3, 1]));
        assert_eq!(p(&[1, 3]).terms, Expansion::basis(c(&[3, 1])));
    }

    #[test]
    fn p_in_h_examples() {
        assert_eq!(p_in_h(1), h(&[1]));
        assert_eq!(p_in_h(2).terms, e(&[(&[2], int(1)), (&[1, 1], rat(-1, 2))]));
        // Hand evaluation at n = 3: (1/3)(3h_3 - 2h_(1,2) - h_(2,1) + h_(1,1,1)),
        // with h_(1,2) = h_(2,1) after sorting.
        assert_eq!(
            p_in_h(3).terms,
            e(&[(&[3], int(1)), (&[2, 1], int(-1)), (&[1, 1, 1], rat(1, 3))])
        );
        for n in 1..=8 {
            assert_eq!(iota(&p_in_h(n)), iota(&p(&[n])), "n = {n}");
        }
    }

    #[test]
    fn h_in_p_agrees_under_iota() {
        for n in 1..=6 {
            assert_eq!(iota(&h_in_p(n)), iota(&h(&[n])), "n = {n}");
        }
        for a in enumerate_up_to(5) {
            let x = h(a.parts());
            assert_eq!(iota(&sym_convert(&x, SymBasis::P)), iota(&x));
            let y = p(a.parts());
            assert_eq!(sym_convert(&sym_convert(&y, SymBasis::H), SymBasis::P), y);
        }
    }

    #[test]
    fn nsym_product_examples() {
        let b = |q: &[usize]| Expansion::basis(c(q));
        assert_eq!(nsym_product(&b(&[2]), &b(&[1])), b(&[2, 1]));
        assert_eq!(nsym_product(&b(&[]), &b(&[3, 1])), b(&[3, 1]));
        assert_eq!(
            nsym_product(&(&b(&[1]) + &b(&[2])), &b(&[1])),
            &b(&[1, 1]) + &b(&[2, 1])
        );
    }

    #[test]
    fn nsym_coproduct_examples() {
        let b = |q: &[usize]| Expansion::basis(c(q));
        let t = |l: &[usize], r: &[usize], k: i64| ((c(l), c(r)), int(k));
        let expect: TensorExpansion<Composition> =
            [t(&[], &[2], 1), t(&[1], &[1], 1), t(&[2], &[], 1)].into_iter().collect();
        assert_eq!(nsym_coproduct(&b(&[2])), expect);
        assert_eq!(nsym_coproduct(&b(&[])), tensor(&b(&[]), &b(&[])));
        let expect: TensorExpansion<Composition> =
            [t(&[], &[1, 1], 1), t(&[1], &[1], 2), t(&[1, 1], &[], 1)].into_iter().collect();
        assert_eq!(nsym_coproduct(&b(&[1, 1])), expect);
    }

    #[test]
    fn pairing_examples() {
        let m = |q: &[usize]| QSymElement::basis_element(QSymBasis::M, c(q));
        let s = |q: &[usize]| QSymElement::basis_element(QSymBasis::S, c(q));
        assert_eq!(pair(&hh(&[2, 1]), &m(&[2, 1])), int(1));
        assert_eq!(pair(&hh(&[2, 1]), &m(&[3])), int(0));
        assert_eq!(pair(&sd(&[1, 1]), &s(&[1, 1])), int(1));
    }

    #[test]
    fn dual_shuffle_examples() {
        assert_eq!(dual_shuffle_expand(&c(&[1, 1])), e(&[(&[1, 1], int(1))]));
        assert_eq!(dual_shuffle_expand(&c(&[2])), e(&[(&[2], int(1)), (&[1, 1], rat(-1, 2))]));
        for n in 1..=6 {
            assert!(is_primitive_nsym(&dual_shuffle_expand(&c(&[n]))), "S*_{n}");
        }
        assert!(!is_primitive_nsym(&Expansion::basis(c(&[2]))));
    }

    #[test]
    fn dual_shuffle_is_dual_through_degree_seven() {
        for n in 0..=7 {
            let comps = composition::enumerate(n, false);
            for a in &comps {
                for b in &comps {
                    let v = pair(&sd(a.parts()), &QSymElement::basis_element(QSymBasis::S, b.clone()));
                    let expect = if a == b { int(1) } else { int(0) };
                    assert_eq!(v, expect, "<S*_{a}, S_{b}>");
                }
            }
        }
    }

    #[test]
    fn nsym_convert_round_trip() {
        for a in enumerate_up_to(6) {
            let x = hh(a.parts());
            assert_eq!(nsym_convert(&nsym_convert(&x, NSymBasis::SD), NSymBasis::H), x);
        }
    }

    #[test]
    fn pi_examples() {
        assert_eq!(pi_project(&hh(&[2, 1])), h(&[2, 1]));
        let pi_sd2 = pi_project(&sd(&[2]));
        assert_eq!(pi_sd2.terms, e(&[(&[2], int(1)), (&[1, 1], rat(-1, 2))]));
        assert_eq!(iota(&pi_sd2), iota(&p(&[2])));
        assert_eq!(iota(&pi_project(&sd(&[1, 3]))), iota(&p(&[1, 3])));
    }

    #[test]
    fn pi_of_dual_shuffle_is_power_sum_through_degree_six() {
        for a in enumerate_up_to(6) {
            assert_eq!(iota(&pi_project(&sd(a.parts()))), iota(&p(a.parts())), "S*_{a}");
        }
    }

    #[test]
    fn pi_is_multiplicative() {
        let keys = enumerate_up_to(4);
        for a in &keys {
            for b in &keys {
                if a.degree() + b.degree() > 6 {
                    continue;
                }
                let prod = NSymElement::new(NSymBasis::H, nsym_product(&Expansion::basis(a.clone()), &Expansion::basis(b.clone())));
                let lhs = pi_project(&prod);
                let rhs = sym_product(&pi_project(&hh(a.parts())), &pi_project(&hh(b.parts())));
                assert_eq!(iota(&lhs), iota(&rhs));
            }
        }
    }

    #[test]
    fn duality_of_structure_through_degree_five() {
        // <xy, z> = <x ⊗ y, Δz> for H basis x, y and M basis z.
        let keys = enumerate_up_to(5);
        for x in &keys {
            for y in &keys {
                let n = x.degree() + y.degree();
                if n > 5 {
                    continue;
                }
                for z in composition::enumerate(n, false) {
                    let xy = NSymElement::new(NSymBasis::H, NSymH.product(x, y));
                    let lhs = pair(&xy, &QSymElement::basis_element(QSymBasis::M, z.clone()));
                    let rhs = qsym::m_coproduct(&Expansion::basis(z.clone()))
                        .evaluate(|(l, r)| if l == x && r == y { int(1) } else { int(0) });
                    assert_eq!(lhs, rhs, "<H_{x} H_{y}, M_{z}>");
                }
            }
        }
    }

    #[test]
    fn sym_pairing_examples() {
        assert_eq!(sym_pairing(&p(&[2]), &p(&[2])), rat(1, 2));
        assert_eq!(sym_pairing(&p(&[1, 1]), &p(&[2])), int(0));
        assert_eq!(sym_pairing(&p(&[1, 1]), &p(&[1, 1])), int(2));
    }

    #[test]
    fn nsym_hopf_axioms_through_degree_four() {
        assert!(crate::algebra::check_hopf_axioms(&NSymH, 4).is_empty());
    }

    #[test]
    fn sym_coproduct_matches_qsym() {
        for basis in [SymBasis::P, SymBasis::H] {
            for a in enumerate_up_to(5) {
                let x = sym_basis_element(basis, &a);
                let delta = sym_coproduct(&x);
                let leg = |k: &Composition| iota(&sym_basis_element(basis, k));
                let lhs = crate::algebra::tensor_map(&delta, leg, leg);
                assert_eq!(lhs, qsym::m_coproduct(&iota(&x)), "{basis}{a}");
            }
        }
    }

    #[test]
    fn sym_antipode_matches_qsym() {
        for basis in [SymBasis::P, SymBasis::H] {
            for a in enumerate_up_to(5) {
                let x = sym_basis_element(basis, &a);
                let lhs = iota(&sym_antipode(&x));
                let rhs = qsym::antipode(&QSymElement::new(QSymBasis::M, iota(&x))).terms;
                assert_eq!(lhs, rhs, "{basis}{a}");
            }
        }
    }

    #[test]
    fn dual_shuffle_coproduct_is_dual_to_shuffle_product() {
        let keys = enumerate_up_to(5);
        for u in &keys {
            let delta = nsym_coproduct_in(&NSymElement::basis_element(NSymBasis::SD, u.clone()));
            for v in &keys {
                for w in &keys {
                    if v.degree() + w.degree() != u.degree() {
                        continue;
                    }
                    let prod = qsym::s_product(&Expansion::basis(v.clone()), &Expansion::basis(w.clone()));
                    assert_eq!(delta.coeff(&(v.clone(), w.clone())), prod.coeff(u), "{u} {v} {w}");
                }
            }
        }
    }

    #[test]
    fn nsym_antipode_is_dual_to_qsym_antipode() {
        for n in 0..=5 {
            let comps = composition::enumerate(n, false);
            for u in &comps {
                let su = nsym_antipode(&NSymElement::basis_element(NSymBasis::SD, u.clone()));
                for v in &comps {
                    let sv = qsym::antipode(&QSymElement::basis_element(QSymBasis::S, v.clone()));
                    let lhs = pair(&su, &QSymElement::basis_element(QSymBasis::S, v.clone()));
                    let rhs = pair(&NSymElement::basis_element(NSymBasis::SD, u.clone()), &sv);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
