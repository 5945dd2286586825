//! Shuffle, tensor and symmetric algebras over a graded alphabet, their maps
//! into QSym and Sym, theta maps, pairings, odd Hilbert series, and the
//! permutation (`𝒱`) and set-partition instances.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{Expansion, GradedHopf, Rational, TensorExpansion};
use crate::characters::{zeta_on_s_closed, Character};
use crate::composition::{binomial, factorial, interleavings, Composition};
use crate::qsym::{QSymBasis, QSymElement};
use crate::sym::{SymBasis, SymElement};
use crate::theta::odd_scaling;

/// Default bound on `n` for brute-force enumerations.
pub const DEFAULT_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("letter {0} is not in the alphabet")]
    UnknownLetter(Letter),
    #[error("generators of degree 0 are not allowed")]
    ZeroDegree,
    #[error("alphabet line {line}: {message}")]
    AlphabetSyntax { line: usize, message: String },
    #[error("cannot read alphabet file {path}: {message}")]
    Io { path: String, message: String },
    #[error("generator count of degree {0} does not fit in 64 bits")]
    Overflow(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid set partition: {0}")]
    InvalidSetPartition(String),
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// A generator, identified by its degree and its index among generators of
/// that degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub degree: usize,
    pub index: usize,
}

impl Letter {
    pub fn new(degree: usize, index: usize) -> Self {
        Letter { degree, index }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}_{}", self.degree, self.index)
    }
}

/// Generator counts per degree, with optional display labels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedAlphabet {
    counts: BTreeMap<usize, u64>,
    labels: BTreeMap<Letter, String>,
}

impl GradedAlphabet {
    pub fn try_from_counts(counts: &[(usize, u64)]) -> Result<Self, FreeAlgError> {
        let mut out = GradedAlphabet::default();
        for &(d, c) in counts {
            if d == 0 {
                return Err(FreeAlgError::ZeroDegree);
            }
            if c > 0 {
                *out.counts.entry(d).or_insert(0) += c;
            }
        }
        Ok(out)
    }

    /// Panics on a degree-0 entry.
    pub fn from_counts(counts: &[(usize, u64)]) -> Self {
        Self::try_from_counts(counts).expect("generator degrees must be positive")
    }

    pub fn count(&self, degree: usize) -> u64 {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().map(|(&d, &c)| (d, c))
    }

    pub fn contains(&self, letter: &Letter) -> bool {
        (letter.index as u64) < self.count(letter.degree)
    }

    /// Generators of one degree, in index order.
    pub fn letters(&self, degree: usize) -> Vec<Letter> {
        (0..self.count(degree) as usize).map(|i| Letter::new(degree, i)).collect()
    }

    /// Generators of degree at most `max_degree`.
    pub fn letters_up_to(&self, max_degree: usize) -> Vec<Letter> {
        (1..=max_degree).flat_map(|d| self.letters(d)).collect()
    }

    pub fn label(&self, letter: &Letter) -> String {
        self.labels.get(letter).cloned().unwrap_or_else(|| letter.to_string())
    }

    /// Appends a named generator of the given degree.
    pub fn push_labeled(&mut self, degree: usize, label: impl Into<String>) -> Result<Letter, FreeAlgError> {
        if degree == 0 {
            return Err(FreeAlgError::ZeroDegree);
        }
        let count = self.counts.entry(degree).or_insert(0);
        let letter = Letter::new(degree, *count as usize);
        *count += 1;
        self.labels.insert(letter, label.into());
        Ok(letter)
    }

    /// Parses lines `degree count` or `degree label`; blank lines and lines
    /// starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self, FreeAlgError> {
        let mut out = GradedAlphabet::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syntax = |message: &str| FreeAlgError::AlphabetSyntax { line: i + 1, message: message.into() };
            let mut tokens = line.split_whitespace();
            let degree: usize = tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| syntax("expected a degree"))?;
            let second = tokens.next().ok_or_else(|| syntax("expected a count or a label"))?;
            if tokens.next().is_some() {
                return Err(syntax("expected two fields"));
            }
            if degree == 0 {
                return Err(syntax("degree must be positive"));
            }
            match second.parse::<u64>() {
                Ok(c) => {
                    if c > 0 {
                        *out.counts.entry(degree).or_insert(0) += c;
                    }
                }
                Err(_) => {
                    out.push_labeled(degree, second)?;
                }
            }
        }
        Ok(out)
    }

    pub fn from_file(path: &Path) -> Result<Self, FreeAlgError> {
        let text = fs::read_to_string(path).map_err(|e| FreeAlgError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    fn from_atom_counts(atoms: &[BigInt]) -> Result<Self, FreeAlgError> {
        let mut out = GradedAlphabet::default();
        for (i, a) in atoms.iter().enumerate() {
            let c = a.to_u64().ok_or(FreeAlgError::Overflow(i + 1))?;
            if c > 0 {
                out.counts.insert(i + 1, c);
            }
        }
        Ok(out)
    }

    /// Permutations without global descents, up to `max_degree`. Generators
    /// carry permutation labels up to [`DEFAULT_CAP`].
    pub fn permutation_atoms(max_degree: usize) -> Result<Self, FreeAlgError> {
        let atoms = atoms_from_totals(&factorial_totals(max_degree));
        let mut out = Self::from_atom_counts(&atoms)?;
        for n in 1..=max_degree.min(DEFAULT_CAP) {
            for (i, p) in Permutation::atoms(n).into_iter().enumerate() {
                out.labels.insert(Letter::new(n, i), p.to_string());
            }
        }
        Ok(out)
    }

    /// Atomic set partitions, up to `max_degree`. Generators carry set
    /// partition labels up to [`DEFAULT_CAP`].
    pub fn ncsym(max_degree: usize) -> Result<Self, FreeAlgError> {
        let atoms = atoms_from_totals(&bell_numbers(max_degree));
        let mut out = Self::from_atom_counts(&atoms)?;
        for n in 1..=max_degree.min(DEFAULT_CAP) {
            let atomic = enumerate_setpartitions(n, DEFAULT_CAP)?.into_iter().filter(SetPartition::is_atomic);
            for (i, p) in atomic.enumerate() {
                out.labels.insert(Letter::new(n, i), p.to_string());
            }
        }
        Ok(out)
    }
}

/// Access to the letters of a word or class.
pub trait LetterSequence {
    fn letters(&self) -> &[Letter];

    fn degree(&self) -> usize {
        self.letters().iter().map(|l| l.degree).sum()
    }

    fn len(&self) -> usize {
        self.letters().len()
    }

    fn is_empty(&self) -> bool {
        self.letters().is_empty()
    }

    /// All letter degrees odd.
    fn is_odd(&self) -> bool {
        self.letters().iter().all(|l| l.degree % 2 == 1)
    }

    fn degree_sequence(&self) -> Composition {
        Composition::from_parts(&self.letters().iter().map(|l| l.degree).collect::<Vec<_>>())
    }
}

fn fmt_letters(letters: &[Letter], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if letters.is_empty() {
        return write!(f, "()");
    }
    for (i, l) in letters.iter().enumerate() {
        if i > 0 {
            write!(f, ".")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

/// A word in the generators. Ordered by degree, then length, then letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl LetterSequence for Word {
    fn letters(&self) -> &[Letter] {
        &self.0
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.0.len(), &self.0).cmp(&(other.degree(), other.0.len(), &other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_letters(&self.0, f)
    }
}

/// The class of a word in the symmetric algebra, stored as a sorted multiset.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ClassWord(Vec<Letter>);

impl ClassWord {
    pub fn new(mut letters: Vec<Letter>) -> Self {
        letters.sort();
        ClassWord(letters)
    }

    pub fn empty() -> Self {
        ClassWord(Vec::new())
    }

    /// Distinct letters with their multiplicities.
    pub fn multiplicities(&self) -> Vec<(Letter, usize)> {
        let mut out: Vec<(Letter, usize)> = Vec::new();
        for &l in &self.0 {
            match out.last_mut() {
                Some((last, m)) if *last == l => *m += 1,
                _ => out.push((l, 1)),
            }
        }
        out
    }

    pub fn union(&self, other: &ClassWord) -> ClassWord {
        ClassWord::new(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl From<&Word> for ClassWord {
    fn from(w: &Word) -> Self {
        ClassWord::new(w.0.clone())
    }
}

impl LetterSequence for ClassWord {
    fn letters(&self) -> &[Letter] {
        &self.0
    }
}

impl Ord for ClassWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.0.len(), &self.0).cmp(&(other.degree(), other.0.len(), &other.0))
    }
}

impl PartialOrd for ClassWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ClassWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_letters(&self.0, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WordFlavor {
    /// Shuffle product, deconcatenation coproduct.
    Shuffle,
    /// Concatenation product, deshuffle coproduct.
    Tensor,
}

impl fmt::Display for WordFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WordFlavor::Shuffle => "shuffle",
            WordFlavor::Tensor => "tensor",
        })
    }
}

impl FromStr for WordFlavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "shuffle" => Ok(WordFlavor::Shuffle),
            "tensor" => Ok(WordFlavor::Tensor),
            _ => Err(format!("unknown flavor {s:?}")),
        }
    }
}

fn all_sequences(letters: &[Letter], degree: usize) -> Vec<Vec<Letter>> {
    if degree == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for &l in letters {
        if l.degree <= degree {
            for mut rest in all_sequences(letters, degree - l.degree) {
                rest.insert(0, l);
                out.push(rest);
            }
        }
    }
    out
}

fn nondecreasing_sequences(letters: &[Letter], degree: usize) -> Vec<Vec<Letter>> {
    if degree == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &l) in letters.iter().enumerate() {
        if l.degree <= degree {
            for mut rest in nondecreasing_sequences(&letters[i..], degree - l.degree) {
                rest.insert(0, l);
                out.push(rest);
            }
        }
    }
    out
}

fn sign(len: usize) -> Rational {
    if len % 2 == 0 { Rational::one() } else { -Rational::one() }
}

/// `S(V)` or `T(V)` over an alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordAlgebra {
    alphabet: GradedAlphabet,
    flavor: WordFlavor,
}

impl WordAlgebra {
    pub fn new(alphabet: GradedAlphabet, flavor: WordFlavor) -> Self {
        WordAlgebra { alphabet, flavor }
    }

    pub fn alphabet(&self) -> &GradedAlphabet {
        &self.alphabet
    }

    pub fn flavor(&self) -> WordFlavor {
        self.flavor
    }

    /// Rejects letters outside the alphabet.
    pub fn validate<K: LetterSequence + Ord + Clone>(&self, x: &Expansion<K>) -> Result<(), FreeAlgError> {
        validate_letters(&self.alphabet, x)
    }

    pub fn checked_mul(&self, x: &Expansion<Word>, y: &Expansion<Word>) -> Result<Expansion<Word>, FreeAlgError> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(self.mul(x, y))
    }

    pub fn checked_comul(&self, x: &Expansion<Word>) -> Result<TensorExpansion<Word>, FreeAlgError> {
        self.validate(x)?;
        Ok(self.comul(x))
    }
}

fn validate_letters<K: LetterSequence + Ord + Clone>(alphabet: &GradedAlphabet, x: &Expansion<K>) -> Result<(), FreeAlgError> {
    for k in x.keys() {
        if let Some(l) = k.letters().iter().find(|l| !alphabet.contains(l)) {
            return Err(FreeAlgError::UnknownLetter(*l));
        }
    }
    Ok(())
}

impl GradedHopf for WordAlgebra {
    type Key = Word;

    fn degree(&self, key: &Word) -> usize {
        LetterSequence::degree(key)
    }

    fn unit(&self) -> Word {
        Word::empty()
    }

    fn product(&self, a: &Word, b: &Word) -> Expansion<Word> {
        match self.flavor {
            WordFlavor::Shuffle => {
                let mut out = Expansion::zero();
                for w in interleavings(&a.0, &b.0) {
                    out.add_term(Word(w), Rational::one());
                }
                out
            }
            WordFlavor::Tensor => Expansion::basis(a.concat(b)),
        }
    }

    fn coproduct(&self, a: &Word) -> TensorExpansion<Word> {
        let mut out = Expansion::zero();
        match self.flavor {
            WordFlavor::Shuffle => {
                for k in 0..=a.0.len() {
                    out.add_term((Word(a.0[..k].to_vec()), Word(a.0[k..].to_vec())), Rational::one());
                }
            }
            WordFlavor::Tensor => {
                let n = a.0.len();
                for mask in 0u64..(1u64 << n) {
                    let (mut left, mut right) = (Vec::new(), Vec::new());
                    for (i, &l) in a.0.iter().enumerate() {
                        if mask >> i & 1 == 1 { left.push(l) } else { right.push(l) }
                    }
                    out.add_term((Word(left), Word(right)), Rational::one());
                }
            }
        }
        out
    }

    fn basis(&self, degree: usize) -> Vec<Word> {
        let mut words: Vec<Word> = all_sequences(&self.alphabet.letters_up_to(degree), degree)
            .into_iter()
            .map(Word)
            .collect();
        words.sort();
        words
    }

    fn antipode(&self, a: &Word) -> Expansion<Word> {
        Expansion::term(a.reversed(), sign(a.0.len()))
    }
}

/// `Sym(V)`: commutative and cocommutative, on classes of words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricAlgebra {
    alphabet: GradedAlphabet,
}

impl SymmetricAlgebra {
    pub fn new(alphabet: GradedAlphabet) -> Self {
        SymmetricAlgebra { alphabet }
    }

    pub fn alphabet(&self) -> &GradedAlphabet {
        &self.alphabet
    }

    pub fn validate(&self, x: &Expansion<ClassWord>) -> Result<(), FreeAlgError> {
        validate_letters(&self.alphabet, x)
    }

    pub fn checked_mul(
        &self,
        x: &Expansion<ClassWord>,
        y: &Expansion<ClassWord>,
    ) -> Result<Expansion<ClassWord>, FreeAlgError> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(self.mul(x, y))
    }
}

impl GradedHopf for SymmetricAlgebra {
    type Key = ClassWord;

    fn degree(&self, key: &ClassWord) -> usize {
        LetterSequence::degree(key)
    }

    fn unit(&self) -> ClassWord {
        ClassWord::empty()
    }

    fn product(&self, a: &ClassWord, b: &ClassWord) -> Expansion<ClassWord> {
        Expansion::basis(a.union(b))
    }

    /// Splits each multiplicity `m` as `k + (m-k)` with weight `C(m, k)`.
    fn coproduct(&self, a: &ClassWord) -> TensorExpansion<ClassWord> {
        let mut splits: Vec<(Vec<Letter>, Vec<Letter>, BigInt)> = vec![(Vec::new(), Vec::new(), BigInt::one())];
        for (l, m) in a.multiplicities() {
            let mut next = Vec::new();
            for (left, right, w) in &splits {
                for k in 0..=m {
                    let mut left = left.clone();
                    let mut right = right.clone();
                    left.extend(std::iter::repeat(l).take(k));
                    right.extend(std::iter::repeat(l).take(m - k));
                    next.push((left, right, w * binomial(m, k)));
                }
            }
            splits = next;
        }
        splits
            .into_iter()
            .map(|(l, r, w)| ((ClassWord::new(l), ClassWord::new(r)), Rational::from_integer(w)))
            .collect()
    }

    fn basis(&self, degree: usize) -> Vec<ClassWord> {
        let mut classes: Vec<ClassWord> =
            nondecreasing_sequences(&self.alphabet.letters_up_to(degree), degree)
                .into_iter()
                .map(ClassWord::new)
                .collect();
        classes.sort();
        classes
    }

    fn antipode(&self, a: &ClassWord) -> Expansion<ClassWord> {
        Expansion::term(a.clone(), sign(a.0.len()))
    }
}

/// `Φ_{S(V)}`: a word maps to `S` of its degree sequence.
pub fn phi_shuffle(x: &Expansion<Word>) -> QSymElement {
    QSymElement::new(QSymBasis::S, x.map_keys(LetterSequence::degree_sequence))
}

/// `Φ_{T(V)}`: a word maps to the product of `p_{deg}` over its letters.
pub fn phi_tensor(x: &Expansion<Word>) -> SymElement {
    SymElement::new(SymBasis::P, x.map_keys(|w| w.degree_sequence().sorted_decreasing()))
}

/// `Φ_{Sym(V)}`: a class maps to `p` of its sorted degrees.
pub fn phi_symmetric(x: &Expansion<ClassWord>) -> SymElement {
    SymElement::new(SymBasis::P, x.map_keys(|w| w.degree_sequence().sorted_decreasing()))
}

fn inverse_degree_product<K: LetterSequence>(k: &K) -> Rational {
    let prod: BigInt = k.letters().iter().map(|l| BigInt::from(l.degree)).product();
    Rational::new(BigInt::one(), prod)
}

/// The canonical character: the block-factorial closed form on the degree
/// sequence for `S(V)`, and `v ↦ 1/deg(v)` extended multiplicatively for `T(V)`.
pub fn canonical_character(algebra: Arc<WordAlgebra>) -> Character<WordAlgebra> {
    match algebra.flavor {
        WordFlavor::Shuffle => Character::new(algebra, "zeta_S(V)", |w: &Word| {
            zeta_on_s_closed(&w.degree_sequence())
        }),
        WordFlavor::Tensor => Character::new(algebra, "zeta_T(V)", inverse_degree_product::<Word>),
    }
}

/// The canonical character of `Sym(V)`: `v̄ ↦ 1/deg(v)`, multiplicatively.
pub fn symmetric_character(algebra: Arc<SymmetricAlgebra>) -> Character<SymmetricAlgebra> {
    Character::new(algebra, "zeta_Sym(V)", inverse_degree_product::<ClassWord>)
}

/// `v_α ↦ 2^{ℓ(α)} v_α` on odd words or classes, else `0`.
pub fn theta_free<K: LetterSequence + Ord + Clone>(x: &Expansion<K>) -> Expansion<K> {
    x.linear_map(|k| Expansion::term(k.clone(), odd_scaling(&k.degree_sequence())))
}

/// Kronecker pairing on words.
pub fn pairing_st(x: &Expansion<Word>, y: &Expansion<Word>) -> Rational {
    x.evaluate(|w| y.coeff(w))
}

/// `⟨v̄_α, v̄_β⟩ = δ · Π_g mult_g! / Π_i deg(α_i)` on classes.
pub fn pairing_sym_v(x: &Expansion<ClassWord>, y: &Expansion<ClassWord>) -> Rational {
    x.evaluate(|w| {
        let cy = y.coeff(w);
        if cy.is_zero() {
            return cy;
        }
        let mults: BigInt = w.multiplicities().iter().map(|&(_, m)| factorial(m)).product();
        cy * Rational::from_integer(mults) * inverse_degree_product(w)
    })
}

/// Graded dimensions of the span of odd words, degrees `0..=max_degree`:
/// `dim_n = Σ_{d odd} a_d dim_{n-d}`.
pub fn hilbert_odd(alphabet: &GradedAlphabet, max_degree: usize) -> Vec<BigInt> {
    let mut dims = vec![BigInt::one()];
    for n in 1..=max_degree {
        let mut total = BigInt::zero();
        for d in (1..=n).step_by(2) {
            let a = alphabet.count(d);
            if a > 0 {
                total += BigInt::from(a) * &dims[n - d];
            }
        }
        dims.push(total);
    }
    dims
}

/// Inverts `T = 1/(1 - A)`: given totals `t_0 = 1, t_1, …, t_N`, returns
/// atom counts `a_1, …, a_N`.
pub fn atoms_from_totals(totals: &[BigInt]) -> Vec<BigInt> {
    assert!(totals.first().is_some_and(One::is_one), "totals must start with 1");
    let mut atoms: Vec<BigInt> = Vec::new();
    for n in 1..totals.len() {
        let mut a = totals[n].clone();
        for k in 1..n {
            a -= &atoms[k - 1] * &totals[n - k];
        }
        atoms.push(a);
    }
    atoms
}

/// Totals of sequences of atoms: `t_0 = 1`, `t_n = Σ_k a_k t_{n-k}`.
pub fn totals_from_atoms(atoms: &[BigInt]) -> Vec<BigInt> {
    let mut totals = vec![BigInt::one()];
    for n in 1..=atoms.len() {
        let t = (1..=n).map(|k| &atoms[k - 1] * &totals[n - k]).sum();
        totals.push(t);
    }
    totals
}

/// `0!, 1!, …, n!`.
pub fn factorial_totals(n: usize) -> Vec<BigInt> {
    (0..=n).map(factorial).collect()
}

/// Bell numbers `B_0, …, B_n`, by the Bell triangle.
pub fn bell_numbers(n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        out.push(row.last().expect("nonempty row").clone());
        let mut next = vec![row.last().expect("nonempty row").clone()];
        for x in &row {
            let v = next.last().expect("nonempty row") + x;
            next.push(v);
        }
        row = next;
    }
    out
}

/// A permutation in one-line notation on `1..=n`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self, FreeAlgError> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                return Err(FreeAlgError::InvalidPermutation(format!("{values:?} is not a permutation of 1..{n}")));
            }
        }
        Ok(Permutation(values))
    }

    /// Panics if `values` is not a permutation.
    pub fn from_values(values: &[usize]) -> Self {
        Self::new(values.to_vec()).expect("valid permutation")
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `{i : σ(a) > σ(b) for all a ≤ i < b}`, with `1 ≤ i < n`.
    pub fn global_descents(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut out = Vec::new();
        let mut prefix_min = usize::MAX;
        for i in 1..n {
            prefix_min = prefix_min.min(self.0[i - 1]);
            // the prefix holds the i largest values exactly when its minimum is n - i + 1
            if prefix_min == n - i + 1 {
                out.push(i);
            }
        }
        out
    }

    /// Nonempty with no global descent.
    pub fn is_atom(&self) -> bool {
        !self.0.is_empty() && self.global_descents().is_empty()
    }

    /// The unique factorization into atoms under shifted concatenation.
    pub fn decompose(&self) -> Vec<Permutation> {
        let mut cuts = vec![0];
        cuts.extend(self.global_descents());
        cuts.push(self.0.len());
        cuts.windows(2)
            .filter(|w| w[0] < w[1])
            .map(|w| {
                let seg = &self.0[w[0]..w[1]];
                let low = seg.iter().min().expect("nonempty segment") - 1;
                Permutation(seg.iter().map(|v| v - low).collect())
            })
            .collect()
    }

    /// `σ ⊙ τ = (σ₁+m)⋯(σ_n+m) τ₁⋯τ_m`.
    pub fn shifted(&self, other: &Permutation) -> Permutation {
        let m = other.0.len();
        Permutation(self.0.iter().map(|v| v + m).chain(other.0.iter().copied()).collect())
    }

    /// All permutations of `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut current: Vec<usize> = (1..=n).collect();
        let mut out = vec![Permutation(current.clone())];
        loop {
            let Some(i) = (1..current.len()).rev().find(|&i| current[i - 1] < current[i]) else {
                return out;
            };
            let j = (i..current.len()).rev().find(|&j| current[j] > current[i - 1]).expect("successor exists");
            current.swap(i - 1, j);
            current[i..].reverse();
            out.push(Permutation(current.clone()));
        }
    }

    /// Permutations of `n` without global descent, in lexicographic order.
    pub fn atoms(n: usize) -> Vec<Permutation> {
        if n == 0 {
            return Vec::new();
        }
        Self::all(n).into_iter().filter(Permutation::is_atom).collect()
    }
}

/// Folds shifted concatenation over a list; the empty list gives `∅`.
pub fn shifted_concat(parts: &[Permutation]) -> Permutation {
    parts.iter().rev().fold(Permutation::empty(), |acc, p| p.shifted(&acc))
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.len(), &self.0).cmp(&(other.0.len(), &other.0))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        let sep = if self.0.len() <= 9 { "" } else { "," };
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(sep))
    }
}

impl FromStr for Permutation {
    type Err = FreeAlgError;

    /// One-line digit strings (`n ≤ 9`) or comma-separated values.
    fn from_str(s: &str) -> Result<Self, FreeAlgError> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Permutation::empty());
        }
        let bad = || FreeAlgError::InvalidPermutation(s.to_string());
        let values: Vec<usize> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_, _>>()?
        };
        Permutation::new(values)
    }
}

/// `𝒱`: the shuffle algebra on permutations viewed as words of atoms.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VAlgebra;

/// Shuffle of the atom words of `σ` and `τ`.
pub fn v_product(sigma: &Permutation, tau: &Permutation) -> Expansion<Permutation> {
    let mut out = Expansion::zero();
    for w in interleavings(&sigma.decompose(), &tau.decompose()) {
        out.add_term(shifted_concat(&w), Rational::one());
    }
    out
}

/// Deconcatenation of the atom word of `σ`.
pub fn v_coproduct(sigma: &Permutation) -> TensorExpansion<Permutation> {
    let atoms = sigma.decompose();
    (0..=atoms.len())
        .map(|k| ((shifted_concat(&atoms[..k]), shifted_concat(&atoms[k..])), Rational::one()))
        .collect()
}

impl GradedHopf for VAlgebra {
    type Key = Permutation;

    fn degree(&self, key: &Permutation) -> usize {
        key.degree()
    }

    fn unit(&self) -> Permutation {
        Permutation::empty()
    }

    fn product(&self, a: &Permutation, b: &Permutation) -> Expansion<Permutation> {
        v_product(a, b)
    }

    fn coproduct(&self, a: &Permutation) -> TensorExpansion<Permutation> {
        v_coproduct(a)
    }

    fn basis(&self, degree: usize) -> Vec<Permutation> {
        Permutation::all(degree)
    }

    fn antipode(&self, a: &Permutation) -> Expansion<Permutation> {
        let mut atoms = a.decompose();
        let s = sign(atoms.len());
        atoms.reverse();
        Expansion::term(shifted_concat(&atoms), s)
    }
}

/// `Φ_𝒱`: `σ¹⊙⋯⊙σ^ℓ ↦ S_{(deg σ¹, …, deg σ^ℓ)}`.
pub fn phi_v(x: &Expansion<Permutation>) -> QSymElement {
    QSymElement::new(
        QSymBasis::S,
        x.map_keys(|p| Composition::from_parts(&p.decompose().iter().map(Permutation::degree).collect::<Vec<_>>())),
    )
}

/// A set partition of `{1, …, n}`; blocks sorted internally and by minimum.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self, FreeAlgError> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(FreeAlgError::InvalidSetPartition("empty block".into()));
            }
            b.sort_unstable();
            for &v in b.iter() {
                if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                    return Err(FreeAlgError::InvalidSetPartition(format!(
                        "blocks do not partition 1..{n}"
                    )));
                }
            }
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Whether every block lies inside `[1..i]` or inside `[i+1..n]`.
    pub fn splits_at(&self, i: usize) -> bool {
        self.blocks.iter().all(|b| b[b.len() - 1] <= i || b[0] > i)
    }

    /// Nonempty and with no split point `1 ≤ i < n`.
    pub fn is_atomic(&self) -> bool {
        self.n > 0 && (1..self.n).all(|i| !self.splits_at(i))
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 0 {
            return write!(f, "()");
        }
        let sep = if self.n <= 9 { "" } else { "," };
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(sep))
            .collect();
        write!(f, "{}", blocks.join("/"))
    }
}

impl FromStr for SetPartition {
    type Err = FreeAlgError;

    /// Slash-separated blocks, as digits (`13/2`) or comma-separated values.
    fn from_str(s: &str) -> Result<Self, FreeAlgError> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(SetPartition::default());
        }
        let bad = || FreeAlgError::InvalidSetPartition(s.to_string());
        let blocks = s
            .split('/')
            .map(|b| {
                let b = b.trim();
                if b.contains(',') {
                    b.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<Vec<_>, _>>()
                } else {
                    b.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect()
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        SetPartition::new(blocks)
    }
}

/// All set partitions of `{1, …, n}` via restricted growth strings; errors
/// when `n > cap`.
pub fn enumerate_setpartitions(n: usize, cap: usize) -> Result<Vec<SetPartition>, FreeAlgError> {
    if n > cap {
        return Err(FreeAlgError::CapExceeded { n, cap });
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut [usize], out: &mut Vec<SetPartition>) {
        if i == rgs.len() {
            let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); if rgs.is_empty() { 0 } else { max + 1 }];
            for (pos, &b) in rgs.iter().enumerate() {
                blocks[b].push(pos + 1);
            }
            out.push(SetPartition::new(blocks).expect("restricted growth string is a partition"));
            return;
        }
        let limit = if i == 0 { 0 } else { max + 1 };
        for b in 0..=limit {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, out);
        }
    }
    rec(0, 0, &mut rgs, &mut out);
    Ok(out)
}
