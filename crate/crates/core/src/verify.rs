//! Named verification suites. Each suite runs a family of exact checks up to
//! a degree bound and reports, per check, the number of cases and the first
//! counterexample.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{
    antipode_recursive, basis_up_to, check_hopf_axioms, AxiomFailure, Expansion, GradedHopf,
    Rational,
};
use crate::characters::{
    nu_shuffle, odd_criterion, zeta_on_s_closed, zeta_qsym_shuffle,
    zetabar_inv_first_principles, zetabar_inv_on_s_closed,
};
use crate::composition::{self, factorial, Composition};
use crate::freealg::{
    self, canonical_character, hilbert_odd, pairing_st, symmetric_character, theta_free, GradedAlphabet,
    LetterSequence, Permutation, SetPartition, SymmetricAlgebra, VAlgebra, WordAlgebra, WordFlavor,
};
use crate::qsym::{
    convert_tensor, m_coproduct, m_product, s_coproduct, s_expand, s_product, s_to_m, MonomialQSym,
    QSymBasis, QSymElement, ShuffleQSym,
};
use crate::sym::{iota, pair, pi_project, sym_basis_element, NSymBasis, NSymElement, NSymH, SymBasis};
use crate::theta::{theta_nsym, theta_qsym, verify_theta_diagram};

/// One named property checked over many cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check { name: name.into(), cases: 0, failures: 0, counterexample: None }
    }

    /// Records one case; `describe` is called only for the first failure.
    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "PASS {} ({} cases)", self.name, self.cases)
        } else {
            write!(
                f,
                "FAIL {} ({}/{} failed; first: {})",
                self.name,
                self.failures,
                self.cases,
                self.counterexample.as_deref().unwrap_or("?")
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}: {}", self.suite, if self.passed() { "PASS" } else { "FAIL" })?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    HopfAxioms,
    ShuffleTheorems,
    ThetaDiagram,
    ClosedForms,
    DualShuffle,
    Adjointness,
    OddCriterion,
    Hilbert,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::HopfAxioms,
        Suite::ShuffleTheorems,
        Suite::ThetaDiagram,
        Suite::ClosedForms,
        Suite::DualShuffle,
        Suite::Adjointness,
        Suite::OddCriterion,
        Suite::Hilbert,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::HopfAxioms => "hopf-axioms",
            Suite::ShuffleTheorems => "shuffle-theorems",
            Suite::ThetaDiagram => "theta-diagram",
            Suite::ClosedForms => "closed-forms",
            Suite::DualShuffle => "dual-shuffle",
            Suite::Adjointness => "adjointness",
            Suite::OddCriterion => "odd-criterion",
            Suite::Hilbert => "hilbert",
        }
    }

    pub fn run(self, max_degree: usize) -> Report {
        match self {
            Suite::HopfAxioms => hopf_axioms(max_degree),
            Suite::ShuffleTheorems => shuffle_theorems(max_degree),
            Suite::ThetaDiagram => verify_theta_diagram(max_degree),
            Suite::ClosedForms => closed_forms(max_degree),
            Suite::DualShuffle => dual_shuffle(max_degree),
            Suite::Adjointness => adjointness(max_degree),
            Suite::OddCriterion => odd_criterion_suite(max_degree),
            Suite::Hilbert => hilbert(max_degree),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite {s:?}; expected one of {}", names.join(", "))
            })
    }
}

/// The alphabet `{1:2, 2:1, 3:1}` used for free-algebra checks.
pub fn mixed_alphabet() -> GradedAlphabet {
    GradedAlphabet::from_counts(&[(1, 2), (2, 1), (3, 1)])
}

fn axioms_check<H: GradedHopf>(name: &str, h: &H, max_degree: usize) -> Check {
    let mut check = Check::new(format!("{name} Hopf axioms through degree {max_degree}"));
    let failures: Vec<AxiomFailure> = check_hopf_axioms(h, max_degree);
    let cases = basis_up_to(h, max_degree).len();
    check.cases = cases;
    check.failures = failures.len();
    check.counterexample = failures.first().map(ToString::to_string);
    check
}

/// Coassociativity, counit, compatibility and antipode on QSym (`M` and `S`),
/// NSym, the free algebras over [`mixed_alphabet`] (degree ≤ 5), and `𝒱`
/// (degree ≤ 4).
pub fn hopf_axioms(max_degree: usize) -> Report {
    let mut report = Report::new("hopf-axioms");
    let free = max_degree.min(5);
    report.push(axioms_check("QSym[M]", &MonomialQSym, max_degree));
    report.push(axioms_check("QSym[S]", &ShuffleQSym, max_degree));
    report.push(axioms_check("NSym[H]", &NSymH, max_degree.min(5)));
    for flavor in [WordFlavor::Shuffle, WordFlavor::Tensor] {
        let h = WordAlgebra::new(mixed_alphabet(), flavor);
        report.push(axioms_check(&format!("{flavor} algebra"), &h, free));
    }
    report.push(axioms_check("symmetric algebra", &SymmetricAlgebra::new(mixed_alphabet()), free));
    report.push(axioms_check("V", &VAlgebra, max_degree.min(4)));
    report
}

fn shuffle_product_check(max_degree: usize) -> Check {
    let mut check = Check::new(format!("S_a S_b equals the monomial product, |a|+|b| <= {max_degree}"));
    let keys = composition::enumerate_up_to(max_degree);
    for a in &keys {
        for b in &keys {
            if a.degree() + b.degree() > max_degree {
                continue;
            }
            let lhs = s_to_m(&s_product(&Expansion::basis(a.clone()), &Expansion::basis(b.clone())));
            let rhs = m_product(&s_expand(a), &s_expand(b));
            check.record(lhs == rhs, || format!("S{a} * S{b}"));
        }
    }
    check
}

fn shuffle_coproduct_check(max_degree: usize) -> Check {
    let mut check = Check::new(format!("Delta(S_a) equals the monomial coproduct, |a| <= {max_degree}"));
    for a in composition::enumerate_up_to(max_degree) {
        let lhs = convert_tensor(&s_coproduct(&Expansion::basis(a.clone())), QSymBasis::S, QSymBasis::M);
        let rhs = m_coproduct(&s_expand(&a));
        check.record(lhs == rhs, || format!("S{a}"));
    }
    check
}

/// The shuffle-basis product and coproduct against the monomial oracle, and
/// the antipode formula against the recursion.
pub fn shuffle_theorems(max_degree: usize) -> Report {
    shuffle_theorems_split(max_degree, max_degree)
}

/// As [`shuffle_theorems`], with separate bounds for products (total degree)
/// and coproducts.
pub fn shuffle_theorems_split(product_degree: usize, coproduct_degree: usize) -> Report {
    let mut report = Report::new("shuffle-theorems");
    report.push(shuffle_product_check(product_degree));
    report.push(shuffle_coproduct_check(coproduct_degree));
    let mut antipode = Check::new(format!("S(S_a) = (-1)^l S_rev(a), |a| <= {coproduct_degree}"));
    for a in composition::enumerate_up_to(coproduct_degree) {
        let lhs = s_to_m(&ShuffleQSym.antipode(&a));
        let rhs = antipode_recursive(&MonomialQSym, &s_expand(&a));
        antipode.record(lhs == rhs, || format!("S{a}"));
    }
    report.push(antipode);
    report
}

fn nu_closed(a: &Composition) -> Rational {
    if a.is_odd() {
        Rational::new(BigInt::one() << a.len(), factorial(a.len()))
    } else {
        Rational::zero()
    }
}

/// The closed forms for `ζ(S_α)`, `ζ̄⁻¹(S_α)` and `ν(S_α)` against
/// first-principles evaluation.
pub fn closed_forms(max_degree: usize) -> Report {
    let mut report = Report::new("closed-forms");
    let keys = composition::enumerate_up_to(max_degree);
    let mut zeta = Check::new("zeta(S_a) closed form");
    let mut zetabar = Check::new("zetabar^-1(S_a) closed form");
    let mut nu = Check::new("nu(S_a) = 2^l/l! on odd a, else 0");
    let zeta_s = zeta_qsym_shuffle();
    let nu_s = nu_shuffle();
    for a in &keys {
        let (closed, direct) = (zeta_on_s_closed(a), zeta_s.evaluate(a));
        zeta.record(closed == direct, || format!("S{a}: {closed} vs {direct}"));
        let (closed, direct) = (zetabar_inv_on_s_closed(a), zetabar_inv_first_principles(a));
        zetabar.record(closed == direct, || format!("S{a}: {closed} vs {direct}"));
        let (closed, direct) = (nu_closed(a), nu_s.evaluate(a));
        nu.record(closed == direct, || format!("S{a}: {closed} vs {direct}"));
    }
    report.push(zeta);
    report.push(zetabar);
    report.push(nu);
    report
}

/// `π(S*_α) = p_α` through `ι`, and `⟨S*_α, S_β⟩ = δ_{α,β}`.
pub fn dual_shuffle(max_degree: usize) -> Report {
    let mut report = Report::new("dual-shuffle");
    let mut projection = Check::new("iota(pi(S*_a)) = iota(p_a)");
    let mut duality = Check::new("<S*_a, S_b> = delta");
    for n in 0..=max_degree {
        let comps = composition::enumerate(n, false);
        for a in &comps {
            let sd = NSymElement::basis_element(NSymBasis::SD, a.clone());
            let lhs = iota(&pi_project(&sd));
            let rhs = iota(&sym_basis_element(SymBasis::P, a));
            projection.record(lhs == rhs, || format!("S*{a}"));
            for b in &comps {
                let v = pair(&sd, &QSymElement::basis_element(QSymBasis::S, b.clone()));
                let expect = if a == b { Rational::one() } else { Rational::zero() };
                duality.record(v == expect, || format!("<S*{a}, S{b}> = {v}"));
            }
        }
    }
    report.push(projection);
    report.push(duality);
    report
}

/// `⟨Θ_NSym u, v⟩ = ⟨u, Θ_QSym v⟩` on dual shuffle pairs, and
/// `⟨Θ_{S(V)} x, y⟩ = ⟨x, Θ_{T(V)} y⟩` on words over [`mixed_alphabet`]
/// (degree ≤ 5).
pub fn adjointness(max_degree: usize) -> Report {
    let mut report = Report::new("adjointness");
    let mut dual = Check::new("<Theta_NSym u, v> = <u, Theta_QSym v>");
    for n in 0..=max_degree {
        let comps = composition::enumerate(n, false);
        for a in &comps {
            let u = NSymElement::basis_element(NSymBasis::SD, a.clone());
            let tu = theta_nsym(&u);
            for b in &comps {
                let v = QSymElement::basis_element(QSymBasis::S, b.clone());
                let (lhs, rhs) = (pair(&tu, &v), pair(&u, &theta_qsym(&v)));
                dual.record(lhs == rhs, || format!("S*{a}, S{b}: {lhs} vs {rhs}"));
            }
        }
    }
    report.push(dual);

    let free = max_degree.min(5);
    let mut words = Check::new(format!("<Theta_S(V) x, y> = <x, Theta_T(V) y>, degree <= {free}"));
    let h = WordAlgebra::new(mixed_alphabet(), WordFlavor::Shuffle);
    let keys = basis_up_to(&h, free);
    for x in &keys {
        let ex = Expansion::basis(x.clone());
        let tx = theta_free(&ex);
        for y in &keys {
            let ey = Expansion::basis(y.clone());
            let ok = pairing_st(&tx, &ey) == pairing_st(&ex, &theta_free(&ey));
            words.record(ok, || format!("{x}, {y}"));
        }
    }
    report.push(words);
    report
}

/// Odd `S_α` and odd words pass the odd criterion with their canonical
/// characters; `S_(2)` fails with witness `-2·(1⊗1)`.
pub fn odd_criterion_suite(max_degree: usize) -> Report {
    let mut report = Report::new("odd-criterion");
    let zeta = zeta_qsym_shuffle();
    let mut odd = Check::new(format!("odd S_a pass, |a| <= {max_degree}"));
    for a in composition::enumerate_up_to(max_degree).into_iter().filter(Composition::is_odd) {
        let r = odd_criterion(&Expansion::basis(a.clone()), &zeta).expect("homogeneous");
        odd.record(r.passes, || format!("S{a}: witness {:?}", r.witness));
    }
    report.push(odd);

    let mut even = Check::new("S_(2) fails with witness -2 (1 x 1)");
    let two = Composition::from_parts(&[2]);
    let r = odd_criterion(&Expansion::basis(two), &zeta).expect("homogeneous");
    let expect = Expansion::term((Composition::empty(), Composition::empty()), Rational::from_integer((-2).into()));
    even.record(!r.passes && r.witness == expect, || format!("witness {:?}", r.witness));
    report.push(even);

    let free = max_degree.min(5);
    for flavor in [WordFlavor::Shuffle, WordFlavor::Tensor] {
        let h = Arc::new(WordAlgebra::new(mixed_alphabet(), flavor));
        let chi = canonical_character(Arc::clone(&h));
        let mut check = Check::new(format!("odd words pass in the {flavor} algebra, degree <= {free}"));
        for w in basis_up_to(h.as_ref(), free).into_iter().filter(|w| w.is_odd()) {
            let r = odd_criterion(&Expansion::basis(w.clone()), &chi).expect("homogeneous");
            check.record(r.passes, || w.to_string());
        }
        report.push(check);
    }
    let h = Arc::new(SymmetricAlgebra::new(mixed_alphabet()));
    let chi = symmetric_character(Arc::clone(&h));
    let mut check = Check::new(format!("odd classes pass in the symmetric algebra, degree <= {free}"));
    for w in basis_up_to(h.as_ref(), free).into_iter().filter(|w| w.is_odd()) {
        let r = odd_criterion(&Expansion::basis(w.clone()), &chi).expect("homogeneous");
        check.record(r.passes, || w.to_string());
    }
    report.push(check);
    report
}

const V_SERIES: [u64; 7] = [1, 1, 1, 4, 7, 81, 164];
const NCSYM_SERIES: [u64; 7] = [1, 1, 1, 3, 5, 29, 57];

/// Odd Hilbert series of the permutation and NCSym alphabets against the
/// published values (degree ≤ 6) and against brute-force enumeration of
/// permutations and set partitions (`n ≤ min(max_degree, 6)`).
pub fn hilbert(max_degree: usize) -> Report {
    let mut report = Report::new("hilbert");
    let n = max_degree.min(6);
    let v = GradedAlphabet::permutation_atoms(n).expect("small degrees fit");
    let nc = GradedAlphabet::ncsym(n).expect("small degrees fit");

    let mut series = Check::new(format!("odd Hilbert series through degree {n}"));
    for (name, alphabet, expect) in [("v-perms", &v, &V_SERIES), ("ncsym", &nc, &NCSYM_SERIES)] {
        let got = hilbert_odd(alphabet, n);
        for (d, g) in got.iter().enumerate() {
            series.record(*g == BigInt::from(expect[d]), || format!("{name} degree {d}: {g}"));
        }
    }
    report.push(series);

    let mut perms = Check::new(format!("permutation atoms by enumeration, n <= {n}"));
    let mut parts = Check::new(format!("atomic set partitions by enumeration, n <= {n}"));
    let mut odd_perms = Check::new(format!("odd permutations by enumeration, n <= {n}"));
    let v_series = hilbert_odd(&v, n);
    for d in 1..=n {
        let atoms = Permutation::atoms(d).len() as u64;
        perms.record(atoms == v.count(d), || format!("n={d}: {atoms} vs {}", v.count(d)));
        let atomic = freealg::enumerate_setpartitions(d, freealg::DEFAULT_CAP)
            .expect("within cap")
            .into_iter()
            .filter(SetPartition::is_atomic)
            .count() as u64;
        parts.record(atomic == nc.count(d), || format!("n={d}: {atomic} vs {}", nc.count(d)));
        let odd = Permutation::all(d)
            .into_iter()
            .filter(|p| p.decompose().iter().all(|a| a.degree() % 2 == 1))
            .count();
        odd_perms.record(BigInt::from(odd) == v_series[d], || format!("n={d}: {odd}"));
    }
    report.push(perms);
    report.push(parts);
    report.push(odd_perms);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_small_degree() {
        for suite in Suite::ALL {
            let report = suite.run(4);
            assert!(report.passed(), "{report}");
            assert!(report.checks.iter().all(|c| c.cases > 0), "{report}");
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>(), Ok(suite));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn failing_check_keeps_first_counterexample() {
        let mut c = Check::new("demo");
        c.record(true, || unreachable!());
        c.record(false, || "first".into());
        c.record(false, || "second".into());
        assert!(!c.passed());
        assert_eq!(c.counterexample.as_deref(), Some("first"));
        assert_eq!(c.failures, 2);
        assert!(c.to_string().starts_with("FAIL demo (2/3"));
    }
}
