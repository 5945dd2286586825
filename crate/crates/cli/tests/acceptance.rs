//! Acceptance criteria 1–10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use peakalg::algebra::{check_hopf_axioms, rat, Expansion};
use peakalg::characters::{odd_criterion, zeta_qsym_eval, zeta_qsym_shuffle};
use peakalg::composition::{self, factorial, Composition};
use peakalg::expr::{self, Expr, Tag};
use peakalg::freealg::{
    self, canonical_character, hilbert_odd, symmetric_character, GradedAlphabet, LetterSequence,
    Permutation, SetPartition, SymmetricAlgebra, WordAlgebra, WordFlavor,
};
use peakalg::qsym::{MonomialQSym, QSymBasis, QSymElement};
use peakalg::sym::{iota, pi_project, sym, NSymBasis, NSymElement, SymBasis};
use peakalg::theta::{peak_dimension, theta_qsym, verify_theta_diagram};
use peakalg::verify::{self, mixed_alphabet, Suite};
use peakalg::Rational;

const CRITERION_1_LIMIT: Duration = Duration::from_millis(1);
const CRITERION_2_LIMIT: Duration = Duration::from_secs(10);
const CRITERION_3_LIMIT: Duration = Duration::from_secs(60);

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome { passed, detail: detail.into() }
    }
}

fn c(p: &[usize]) -> Composition {
    Composition::from_parts(p)
}

fn big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn criterion_1() -> Outcome {
    let alpha = c(&[3, 4, 4, 2, 1, 3, 3, 2]);
    let beta = c(&[3, 8, 9, 2]);
    let mut best = Duration::MAX;
    let mut ok = true;
    for _ in 0..20 {
        let start = Instant::now();
        let coeff = alpha.coeff(&beta);
        let m = alpha.odd_min();
        best = best.min(start.elapsed());
        ok &= coeff == Ok(rat(1, 12)) && m == c(&[3, 17, 2]);
    }
    Outcome::new(ok && best < CRITERION_1_LIMIT, format!("coeff = 1/12, odd_min = [3,17,2]; best of 20 runs {best:?} (limit 1 ms)"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let v = GradedAlphabet::permutation_atoms(6).expect("small degrees");
    let nc = GradedAlphabet::ncsym(6).expect("small degrees");
    let mut ok = hilbert_odd(&v, 6) == big(&[1, 1, 1, 4, 7, 81, 164]);
    ok &= hilbert_odd(&nc, 6) == big(&[1, 1, 1, 3, 5, 29, 57]);
    let (mut perms, mut parts) = (0, 0);
    for n in 1..=6 {
        let all = Permutation::all(n);
        perms += all.len();
        let atoms = all.iter().filter(|p| p.is_atom()).count() as u64;
        let partitions = freealg::enumerate_setpartitions(n, freealg::DEFAULT_CAP).expect("within cap");
        parts += partitions.len();
        let atomic = partitions.iter().filter(|p| SetPartition::is_atomic(p)).count() as u64;
        ok &= atoms == v.count(n) && atomic == nc.count(n);
    }
    let elapsed = start.elapsed();
    Outcome::new(
        ok && elapsed < CRITERION_2_LIMIT,
        format!("series 1 1 1 4 7 81 164 and 1 1 1 3 5 29 57; atoms checked on {perms} permutations and {parts} set partitions; {elapsed:?} (limit 10 s)"),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let report = verify::shuffle_theorems_split(7, 8);
    let elapsed = start.elapsed();
    let discrepancies: usize = report.checks.iter().map(|c| c.failures).sum();
    let cases: usize = report.checks.iter().map(|c| c.cases).sum();
    Outcome::new(
        report.passed() && elapsed < CRITERION_3_LIMIT,
        format!("{discrepancies} discrepancies over {cases} cases (products |a|+|b| <= 7, coproducts |a| <= 8); {elapsed:?} (limit 60 s)"),
    )
}

fn criterion_4() -> Outcome {
    let mut failures = check_hopf_axioms(&MonomialQSym, 6).len();
    for flavor in [WordFlavor::Shuffle, WordFlavor::Tensor] {
        failures += check_hopf_axioms(&WordAlgebra::new(mixed_alphabet(), flavor), 5).len();
    }
    failures += check_hopf_axioms(&SymmetricAlgebra::new(mixed_alphabet()), 5).len();
    Outcome::new(failures == 0, format!("{failures} failures (QSym[M] degree <= 6; shuffle, tensor, symmetric over {{1:2, 2:1, 3:1}} degree <= 5)"))
}

fn criterion_5() -> Outcome {
    let zeta_s = zeta_qsym_shuffle();
    let nu = zeta_s.inverse().bar().convolve(&zeta_s).expect("same algebra");
    let mut ok = true;
    let mut cases = 0;
    for a in composition::enumerate_up_to(8) {
        let lhs = zeta_qsym_eval(&theta_qsym(&QSymElement::basis_element(QSymBasis::S, a.clone())));
        let expect = if a.is_odd() {
            Rational::new(BigInt::from(1) << a.len(), factorial(a.len()))
        } else {
            Rational::from_integer(0.into())
        };
        ok &= lhs == nu.evaluate(&a) && lhs == expect;
        cases += 1;
    }
    let diagram = verify_theta_diagram(6);
    let closed = verify::closed_forms(8);
    ok &= diagram.passed() && closed.passed();
    Outcome::new(ok, format!("zeta(Theta(S_a)) = nu(S_a) = 2^l/l! or 0 on {cases} compositions; Hopf morphism through degree 6; closed forms through degree 8"))
}

fn criterion_6() -> Outcome {
    let report = verify::dual_shuffle(6);
    let hand = sym(
        SymBasis::H,
        &[(c(&[2]), rat(1, 1)), (c(&[1, 1]), rat(-1, 2))].into_iter().collect::<Expansion<_>>(),
    );
    let got = pi_project(&NSymElement::basis_element(NSymBasis::SD, c(&[2])));
    let ok = report.passed() && got == hand && iota(&got) == iota(&hand);
    Outcome::new(ok, "pi(S*_a) = p_a through degree 6; pi(S*_(2)) = h_2 - 1/2 h_(1,1)")
}

fn criterion_7() -> Outcome {
    let report = verify::adjointness(6);
    let cases: usize = report.checks.iter().map(|c| c.cases).sum();
    Outcome::new(report.passed(), format!("{cases} pairs (dual basis degree <= 6, words degree <= 5)"))
}

fn criterion_8() -> Outcome {
    let dims: Vec<usize> = (1..=8).map(peak_dimension).collect();
    let enumerated: Vec<usize> = (1..=8).map(|n| composition::enumerate(n, true).len()).collect();
    let ok = dims == [1, 1, 2, 3, 5, 8, 13, 21] && dims == enumerated;
    Outcome::new(ok, format!("dims {dims:?}"))
}

fn criterion_9() -> Outcome {
    let zeta = zeta_qsym_shuffle();
    let mut ok = true;
    for a in composition::enumerate_up_to(6).into_iter().filter(Composition::is_odd) {
        ok &= odd_criterion(&Expansion::basis(a), &zeta).expect("homogeneous").passes;
    }
    let r = odd_criterion(&Expansion::basis(c(&[2])), &zeta).expect("homogeneous");
    let witness = Expansion::term((Composition::empty(), Composition::empty()), rat(-2, 1));
    ok &= !r.passes && r.witness == witness;
    for flavor in [WordFlavor::Shuffle, WordFlavor::Tensor] {
        let h = Arc::new(WordAlgebra::new(mixed_alphabet(), flavor));
        let chi = canonical_character(Arc::clone(&h));
        for w in peakalg::algebra::basis_up_to(h.as_ref(), 5).into_iter().filter(|w| w.is_odd()) {
            ok &= odd_criterion(&Expansion::basis(w), &chi).expect("homogeneous").passes;
        }
    }
    let h = Arc::new(SymmetricAlgebra::new(mixed_alphabet()));
    let chi = symmetric_character(Arc::clone(&h));
    for w in peakalg::algebra::basis_up_to(h.as_ref(), 5).into_iter().filter(|w| w.is_odd()) {
        ok &= odd_criterion(&Expansion::basis(w), &chi).expect("homogeneous").passes;
    }
    Outcome::new(ok, "odd S_a pass (|a| <= 6); S_(2) fails with witness -2 (1 x 1); odd words pass in every flavor (degree <= 5)")
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_peakalg")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn random_expr(rng: &mut StdRng) -> Expr {
    loop {
        let tag = Tag::ALL[rng.gen_range(0..Tag::ALL.len())];
        let mut terms = Expansion::zero();
        for _ in 0..rng.gen_range(1..=4) {
            let len = rng.gen_range(0..=3);
            let parts: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=4)).collect();
            let coeff = rat(rng.gen_range(-9..=9), rng.gen_range(1..=6));
            terms.add_term(c(&parts), coeff);
        }
        let e = Expr::new(tag, terms);
        if !e.is_zero() {
            return e;
        }
    }
}

fn criterion_10() -> Outcome {
    let mut failures = Vec::new();
    let goldens = [
        (vec!["expand", "--to", "M", "S[2,2]"], "expand_s22.txt"),
        (vec!["hilbert", "--alphabet", "v-perms", "--max-degree", "6"], "hilbert_v_perms.txt"),
        (vec!["hilbert", "--alphabet", "ncsym", "--max-degree", "6"], "hilbert_ncsym.txt"),
        (vec!["--json", "expand", "--to", "S", "S[2]"], "json_s2.txt"),
    ];
    for (args, file) in &goldens {
        let (code, out) = cli(args);
        if code != 0 || out != golden(file) {
            failures.push(format!("golden {file}"));
        }
    }

    let mut rng = StdRng::seed_from_u64(20_241_019);
    let mut round_trips = 0;
    for _ in 0..50 {
        let e = random_expr(&mut rng);
        let tag = e.tag.expect("nonzero");
        let (code, out) = cli(&["--json", "expand", "--to", tag.as_str(), &e.to_string()]);
        let back = Expr::from_json(out.trim());
        if code == 0 && back.as_ref() == Ok(&e) && expr::parse(&e.to_string()).as_ref() == Ok(&e) {
            round_trips += 1;
        } else {
            failures.push(format!("round trip of {e}"));
        }
    }

    for suite in Suite::ALL {
        let (code, _) = cli(&["verify", "--suite", suite.name(), "--max-degree", "6"]);
        if code != 0 {
            failures.push(format!("verify {suite} exit {code}"));
        }
    }
    let detail = if failures.is_empty() {
        format!("{} goldens match; {round_trips}/50 JSON round trips; all {} suites exit 0", goldens.len(), Suite::ALL.len())
    } else {
        format!("failures: {}", failures.join("; "))
    };
    Outcome::new(failures.is_empty(), detail)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("coefficient example", criterion_1),
        ("odd Hilbert series", criterion_2),
        ("shuffle-basis theorems", criterion_3),
        ("Hopf axioms", criterion_4),
        ("theta theorem", criterion_5),
        ("dual shuffle theorem", criterion_6),
        ("adjointness", criterion_7),
        ("peak dimensions", criterion_8),
        ("odd criterion", criterion_9),
        ("command line", criterion_10),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        all &= outcome.passed;
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} {name}: {}", i + 1, outcome.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
