//! Theta maps on QSym, Sym and NSym, and peak-algebra membership.
//!
//! On the shuffle basis `Θ_QSym(S_α) = 2^{ℓ(α)} S_α` for odd `α` and `0`
//! otherwise; `Θ_Sym` and `Θ_NSym` act the same way on `p_α` and `S*_α`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{tensor_map, Expansion, Rational};
use crate::characters::{nu_shuffle, zeta_qsym_eval};
use crate::composition::{self, Composition};
use crate::qsym::{self, m_coproduct, m_product, QSymBasis, QSymElement};
use crate::sym::{nsym_convert, sym_convert, NSymBasis, NSymElement, SymBasis, SymElement};
use crate::verify::{Check, Report};

/// `2^{ℓ(α)}` for odd `α`, else `0`.
pub fn odd_scaling(alpha: &Composition) -> Rational {
    if alpha.is_odd() {
        Rational::from_integer(BigInt::one() << alpha.len())
    } else {
        Rational::zero()
    }
}

/// Diagonal odd scaling applied to any expansion over compositions.
pub fn theta_diagonal(x: &Expansion<Composition>) -> Expansion<Composition> {
    x.linear_map(|a| Expansion::term(a.clone(), odd_scaling(a)))
}

/// `Θ_QSym`, returned in the basis of the input.
pub fn theta_qsym(x: &QSymElement) -> QSymElement {
    let in_s = qsym::convert(x, QSymBasis::S);
    let image = QSymElement::new(QSymBasis::S, theta_diagonal(&in_s.terms));
    qsym::convert(&image, x.basis)
}

/// `Θ_Sym`, returned in the basis of the input.
pub fn theta_sym(x: &SymElement) -> SymElement {
    let in_p = sym_convert(x, SymBasis::P);
    let image = SymElement::new(SymBasis::P, theta_diagonal(&in_p.terms));
    sym_convert(&image, x.basis)
}

/// `Θ_NSym`, returned in the basis of the input.
pub fn theta_nsym(x: &NSymElement) -> NSymElement {
    let in_sd = nsym_convert(x, NSymBasis::SD);
    let image = NSymElement::new(NSymBasis::SD, theta_diagonal(&in_sd.terms));
    nsym_convert(&image, x.basis)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeakMembership {
    pub is_member: bool,
    /// Odd compositions in the shuffle-basis support.
    pub odd_support: Vec<Composition>,
    /// Non-odd compositions in the shuffle-basis support.
    pub defect: Vec<Composition>,
}

/// Membership in the peak algebra, the span of the odd `S_α`.
pub fn is_peak(x: &QSymElement) -> PeakMembership {
    let s = qsym::convert(x, QSymBasis::S);
    let (odd_support, defect): (Vec<Composition>, Vec<Composition>) =
        s.terms.keys().cloned().partition(Composition::is_odd);
    PeakMembership { is_member: defect.is_empty(), odd_support, defect }
}

/// Rank of a family of expansions, by exact Gaussian elimination.
pub fn rank(vectors: &[Expansion<Composition>]) -> usize {
    let mut pivots: Vec<(Composition, Expansion<Composition>)> = Vec::new();
    for v in vectors {
        let mut v = v.clone();
        for (key, row) in &pivots {
            let c = v.coeff(key);
            if !c.is_zero() {
                v.add_scaled(row, &-c);
            }
        }
        let lead = v.iter().next().map(|(k, c)| (k.clone(), c.clone()));
        if let Some((key, lead)) = lead {
            let row = v.scale(&lead.recip());
            for (_, other) in pivots.iter_mut() {
                let c = other.coeff(&key);
                if !c.is_zero() {
                    other.add_scaled(&row, &-c);
                }
            }
            pivots.push((key, row));
        }
    }
    pivots.len()
}

/// Dimension of the degree-`n` part of the image of `Θ_QSym`, computed as the
/// rank of `Θ(M_α)` over all `α ⊨ n`.
pub fn peak_dimension(n: usize) -> usize {
    let images: Vec<_> = composition::enumerate(n, false)
        .into_iter()
        .map(|a| theta_qsym(&QSymElement::basis_element(QSymBasis::M, a)).terms)
        .collect();
    rank(&images)
}

fn theta_m(a: &Composition) -> Expansion<Composition> {
    theta_qsym(&QSymElement::basis_element(QSymBasis::M, a.clone())).terms
}

/// Checks that `Θ_QSym` makes the theta-map square commute up to degree `cap`:
/// `ζ ∘ Θ = ζ̄⁻¹ζ` on every `S_α`, and `Θ` is an algebra and coalgebra morphism
/// on monomial basis elements.
pub fn verify_theta_diagram(cap: usize) -> Report {
    let mut report = Report::new("theta-diagram");
    let keys = composition::enumerate_up_to(cap);
    let nu = nu_shuffle();

    let mut character = Check::new("zeta(Theta(S_a)) = nu(S_a)");
    for a in &keys {
        let image = theta_qsym(&QSymElement::basis_element(QSymBasis::S, a.clone()));
        let lhs = zeta_qsym_eval(&image);
        let rhs = nu.evaluate(a);
        character.record(lhs == rhs, || format!("S{a}: {lhs} vs {rhs}"));
    }
    report.push(character);

    let mut algebra = Check::new("Theta(M_a M_b) = Theta(M_a) Theta(M_b)");
    for a in &keys {
        for b in &keys {
            if a.degree() + b.degree() > cap {
                continue;
            }
            let prod = m_product(&Expansion::basis(a.clone()), &Expansion::basis(b.clone()));
            let lhs = theta_qsym(&QSymElement::new(QSymBasis::M, prod)).terms;
            let rhs = m_product(&theta_m(a), &theta_m(b));
            algebra.record(lhs == rhs, || format!("M{a} * M{b}"));
        }
    }
    report.push(algebra);

    let mut coalgebra = Check::new("Delta(Theta(M_a)) = (Theta x Theta) Delta(M_a)");
    for a in &keys {
        let lhs = m_coproduct(&theta_m(a));
        let rhs = tensor_map(&m_coproduct(&Expansion::basis(a.clone())), theta_m, theta_m);
        coalgebra.record(lhs == rhs, || format!("M{a}"));
    }
    report.push(coalgebra);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::composition::enumerate_up_to;
    use crate::qsym::{s_coproduct, s_product};
    use crate::sym::{iota, pair, sym_basis_element};

    fn c(p: &[usize]) -> Composition {
        Composition::from_parts(p)
    }

    fn s(p: &[usize]) -> QSymElement {
        QSymElement::basis_element(QSymBasis::S, c(p))
    }

    fn m(p: &[usize]) -> QSymElement {
        QSymElement::basis_element(QSymBasis::M, c(p))
    }

    fn sd(p: &[usize]) -> NSymElement {
        NSymElement::basis_element(NSymBasis::SD, c(p))
    }

    #[test]
    fn theta_qsym_examples() {
        assert_eq!(theta_qsym(&s(&[1, 1])), s(&[1, 1]).scale(&int(4)));
        assert!(theta_qsym(&s(&[2])).is_zero());
        let expect: Expansion<Composition> =
            [(c(&[1, 1]), int(4)), (c(&[2]), int(2))].into_iter().collect();
        assert_eq!(theta_qsym(&m(&[1, 1])).terms, expect);
    }

    #[test]
    fn theta_eigenstructure_through_degree_eight() {
        for a in enumerate_up_to(8) {
            let image = theta_qsym(&s(a.parts()));
            if a.is_odd() {
                assert_eq!(image, s(a.parts()).scale(&odd_scaling(&a)));
            } else {
                assert!(image.is_zero());
            }
        }
    }

    #[test]
    fn theta_is_hopf_morphism_on_shuffle_basis() {
        let keys = enumerate_up_to(6);
        let th = |k: &Composition| theta_diagonal(&Expansion::basis(k.clone()));
        for a in &keys {
            for b in &keys {
                if a.degree() + b.degree() > 6 {
                    continue;
                }
                let prod = s_product(&Expansion::basis(a.clone()), &Expansion::basis(b.clone()));
                assert_eq!(theta_diagonal(&prod), s_product(&th(a), &th(b)));
            }
            let lhs = s_coproduct(&th(a));
            let rhs = tensor_map(&s_coproduct(&Expansion::basis(a.clone())), th, th);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn theta_sym_examples() {
        let p = |q: &[usize]| sym_basis_element(SymBasis::P, &c(q));
        assert_eq!(theta_sym(&p(&[3])), p(&[3]).scale(&int(2)));
        assert!(theta_sym(&p(&[2, 1])).is_zero());
        assert_eq!(theta_sym(&p(&[1, 1])), p(&[1, 1]).scale(&int(4)));
    }

    #[test]
    fn theta_sym_is_restriction_of_theta_qsym() {
        for a in enumerate_up_to(6) {
            let x = sym_basis_element(SymBasis::P, &a);
            let lhs = iota(&theta_sym(&x));
            let rhs = theta_qsym(&QSymElement::new(QSymBasis::M, iota(&x))).terms;
            assert_eq!(lhs, rhs, "p{a}");
        }
    }

    #[test]
    fn theta_nsym_examples() {
        assert_eq!(theta_nsym(&sd(&[1, 1])), sd(&[1, 1]).scale(&int(4)));
        assert!(theta_nsym(&sd(&[2])).is_zero());
    }

    #[test]
    fn adjointness_through_degree_six() {
        for n in 0..=6 {
            let comps = composition::enumerate(n, false);
            for u in &comps {
                for v in &comps {
                    let lhs = pair(&theta_nsym(&sd(u.parts())), &s(v.parts()));
                    let rhs = pair(&sd(u.parts()), &theta_qsym(&s(v.parts())));
                    assert_eq!(lhs, rhs, "<S*{u}, S{v}>");
                }
            }
        }
    }

    #[test]
    fn peak_membership_examples() {
        let x = QSymElement::new(
            QSymBasis::M,
            [(c(&[1, 1]), int(4)), (c(&[2]), int(2))].into_iter().collect(),
        );
        let member = is_peak(&x);
        assert!(member.is_member);
        assert_eq!(member.odd_support, vec![c(&[1, 1])]);
        let not = is_peak(&m(&[2]));
        assert!(!not.is_member);
        assert_eq!(not.defect, vec![c(&[2])]);
        assert!(is_peak(&QSymElement::zero(QSymBasis::M)).is_member);
    }

    #[test]
    fn image_of_theta_is_peak_through_degree_seven() {
        for a in enumerate_up_to(7) {
            assert!(is_peak(&theta_qsym(&m(a.parts()))).is_member, "{a}");
        }
    }

    #[test]
    fn peak_dimensions_are_odd_composition_counts() {
        for n in 1..=7 {
            assert_eq!(peak_dimension(n), composition::enumerate(n, true).len());
        }
    }

    #[test]
    fn rank_of_dependent_family() {
        let a = Expansion::basis(c(&[1]));
        let b = Expansion::basis(c(&[2]));
        let sum = &a + &b;
        assert_eq!(rank(&[a.clone(), b.clone(), sum]), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn theta_diagram_report() {
        assert!(verify_theta_diagram(6).passed());
        let vacuous = verify_theta_diagram(0);
        assert!(vacuous.passed());
        let nu = nu_shuffle();
        assert_eq!(zeta_qsym_eval(&theta_qsym(&s(&[1, 1]))), int(2));
        assert_eq!(nu.evaluate(&c(&[1, 1])), int(2));
    }
}
