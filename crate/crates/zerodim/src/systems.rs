//! Primitive substitutions, their subshifts, and exact word frequencies.
//!
//! A component is one primitive substitution subshift; a space is a
//! finite disjoint union of components. Each component is uniquely
//! ergodic, so a space carries exactly one ergodic measure per
//! component, ordered by component declaration.
//!
//! Word frequencies are computed from the induced block matrix: the
//! frequency vector of the length-`n` words spans the kernel of
//! `M_n - lambda I` over the component's algebraic context, where
//! `lambda` is the dominant eigenvalue of the letter matrix.

use crate::algebra::{
    characteristic_polynomial, isolate_perron_root, AlgebraicContext, RealAlgebraic,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Errors from building substitutions, components, and spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemError {
    /// A substitution needs at least one rule.
    EmptyAlphabet,
    /// Rule images must be nonempty words.
    EmptyImage(char),
    /// A rule image used a letter with no rule of its own.
    UnknownLetter { letter: char, image_of: char },
    /// Two rules for the same letter.
    DuplicateLetter(char),
    /// The substitution matrix is not primitive.
    NotPrimitive(String),
    /// A space needs at least one component.
    EmptySpace,
    /// Component names within a space must be unique.
    DuplicateComponent(String),
    /// Lookup of a component name that is not part of the space.
    UnknownComponent(String),
}

impl fmt::Display for SystemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemError::EmptyAlphabet => write!(f, "substitution has no rules"),
            SystemError::EmptyImage(c) => write!(f, "rule for '{}' maps to the empty word", c),
            SystemError::UnknownLetter { letter, image_of } => {
                write!(f, "image of '{}' uses undeclared letter '{}'", image_of, letter)
            }
            SystemError::DuplicateLetter(c) => write!(f, "duplicate rule for letter '{}'", c),
            SystemError::NotPrimitive(name) => write!(
                f,
                "substitution '{}' is not primitive: some letter never reaches every other",
                name
            ),
            SystemError::EmptySpace => write!(f, "a space needs at least one component"),
            SystemError::DuplicateComponent(name) => {
                write!(f, "duplicate component name '{}'", name)
            }
            SystemError::UnknownComponent(name) => write!(f, "no component named '{}'", name),
        }
    }
}

impl std::error::Error for SystemError {}

/// A substitution rule set over a finite alphabet of characters.
#[derive(Clone, PartialEq, Eq)]
pub struct Substitution {
    alphabet: Vec<char>,
    rules: BTreeMap<char, String>,
}

impl Substitution {
    /// Builds a substitution from rules in declaration order. Every
    /// letter appearing in an image must have a rule of its own.
    pub fn new(rules: &[(char, &str)]) -> Result<Self, SystemError> {
        if rules.is_empty() {
            return Err(SystemError::EmptyAlphabet);
        }
        let mut alphabet = Vec::with_capacity(rules.len());
        let mut map = BTreeMap::new();
        for (letter, image) in rules {
            if map.insert(*letter, image.to_string()).is_some() {
                return Err(SystemError::DuplicateLetter(*letter));
            }
            alphabet.push(*letter);
        }
        for (letter, image) in &map {
            if image.is_empty() {
                return Err(SystemError::EmptyImage(*letter));
            }
            for c in image.chars() {
                if !map.contains_key(&c) {
                    return Err(SystemError::UnknownLetter { letter: c, image_of: *letter });
                }
            }
        }
        Ok(Substitution { alphabet, rules: map })
    }

    /// Letters in declaration order; this fixes matrix row and column
    /// order.
    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn image(&self, letter: char) -> &str {
        &self.rules[&letter]
    }

    /// Applies the substitution to every letter of `word`.
    pub fn apply(&self, word: &str) -> String {
        word.chars().map(|c| self.image(c)).collect()
    }

    /// `k`-fold application to `seed`.
    pub fn iterate(&self, seed: &str, k: usize) -> String {
        let mut w = seed.to_string();
        for _ in 0..k {
            w = self.apply(&w);
        }
        w
    }

    /// Occurrence-count matrix: entry `(i, j)` counts letter `i` in the
    /// image of letter `j`, so letter frequencies are a right
    /// eigenvector.
    pub fn abelianization(&self) -> Vec<Vec<BigInt>> {
        let n = self.alphabet.len();
        let index: BTreeMap<char, usize> =
            self.alphabet.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for (j, letter) in self.alphabet.iter().enumerate() {
            for c in self.image(*letter).chars() {
                m[index[&c]][j] += 1;
            }
        }
        m
    }

    /// Primitivity via Wielandt's bound: a primitive matrix of size `n`
    /// has a strictly positive power by exponent `(n-1)^2 + 1`.
    pub fn is_primitive(&self) -> bool {
        let n = self.alphabet.len();
        let m = self.abelianization();
        let base: Vec<Vec<bool>> = m
            .iter()
            .map(|row| row.iter().map(|e| e.is_positive()).collect())
            .collect();
        let mut power = base.clone();
        let bound = (n - 1) * (n - 1) + 1;
        for _ in 0..bound {
            if power.iter().all(|row| row.iter().all(|&b| b)) {
                return true;
            }
            let mut next = vec![vec![false; n]; n];
            for i in 0..n {
                for k in 0..n {
                    if !power[i][k] {
                        continue;
                    }
                    for j in 0..n {
                        if base[k][j] {
                            next[i][j] = true;
                        }
                    }
                }
            }
            power = next;
        }
        power.iter().all(|row| row.iter().all(|&b| b))
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for letter in &self.alphabet {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{} -> {}", letter, self.image(*letter))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All length-`n` factors of `word`.
fn factors(word: &str, n: usize) -> BTreeSet<String> {
    let chars: Vec<char> = word.chars().collect();
    let mut out = BTreeSet::new();
    if n == 0 || chars.len() < n {
        return out;
    }
    for w in chars.windows(n) {
        out.insert(w.iter().collect());
    }
    out
}

/// One primitive substitution subshift, named for use inside a space.
///
/// Languages, frequencies, and the algebraic context are computed once
/// and cached; the component is shared through `Arc`.
pub struct SubshiftComponent {
    name: String,
    substitution: Substitution,
    ctx: OnceLock<Arc<AlgebraicContext>>,
    languages: Mutex<BTreeMap<usize, Arc<BTreeSet<String>>>>,
    frequencies: Mutex<BTreeMap<usize, Arc<BTreeMap<String, RealAlgebraic>>>>,
}

impl SubshiftComponent {
    pub fn new(name: &str, substitution: Substitution) -> Result<Arc<Self>, SystemError> {
        if !substitution.is_primitive() {
            return Err(SystemError::NotPrimitive(name.to_string()));
        }
        Ok(Arc::new(SubshiftComponent {
            name: name.to_string(),
            substitution,
            ctx: OnceLock::new(),
            languages: Mutex::new(BTreeMap::new()),
            frequencies: Mutex::new(BTreeMap::new()),
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn substitution(&self) -> &Substitution {
        &self.substitution
    }

    /// The algebraic context rooted at the dominant eigenvalue of the
    /// letter matrix. Block matrices of every order share this
    /// eigenvalue.
    pub fn context(&self) -> Arc<AlgebraicContext> {
        self.ctx
            .get_or_init(|| {
                let p = characteristic_polynomial(&self.substitution.abelianization())
                    .expect("abelianization is square");
                isolate_perron_root(&p)
                    .expect("a primitive matrix has a positive dominant eigenvalue")
            })
            .clone()
    }

    pub fn dominant_eigenvalue(&self) -> RealAlgebraic {
        RealAlgebraic::lambda(&self.context())
    }

    /// The set of length-`n` words of the subshift.
    ///
    /// Iterates "apply the substitution, collect factors" over a
    /// cumulative set until it stops growing; for a primitive
    /// substitution this limit is exactly the language.
    pub fn language(&self, n: usize) -> Arc<BTreeSet<String>> {
        if let Some(hit) = self.languages.lock().unwrap().get(&n) {
            return hit.clone();
        }
        let result = Arc::new(self.compute_language(n));
        self.languages.lock().unwrap().insert(n, result.clone());
        result
    }

    fn compute_language(&self, n: usize) -> BTreeSet<String> {
        if n == 0 {
            return [String::new()].into_iter().collect();
        }
        if self.substitution.alphabet().len() == 1 {
            // A one-letter system is the single constant sequence; the
            // generic loop would stall on a non-growing rule like a -> a.
            let c = self.substitution.alphabet()[0];
            return [c.to_string().repeat(n)].into_iter().collect();
        }
        // Working set: words of length n, plus shorter whole images that
        // still need to grow. All are genuine factors of the subshift.
        let mut known: BTreeSet<String> =
            self.substitution.alphabet().iter().map(|c| c.to_string()).collect();
        loop {
            let mut next = known.clone();
            for w in &known {
                let img = self.substitution.apply(w);
                if img.chars().count() < n {
                    next.insert(img);
                } else {
                    next.extend(factors(&img, n));
                }
            }
            if next == known {
                break;
            }
            known = next;
        }
        known.into_iter().filter(|w| w.chars().count() == n).collect()
    }

    /// Number of distinct length-`n` words.
    pub fn complexity(&self, n: usize) -> usize {
        self.language(n).len()
    }

    /// Induced block matrix of order `n`: the sorted language is the
    /// block alphabet, and entry `(i, j)` counts block `i` among the
    /// first `|image of first letter|` windows of the image of block
    /// `j`.
    pub fn block_matrix(&self, n: usize) -> (Vec<String>, Vec<Vec<BigInt>>) {
        assert!(n >= 1, "block order must be at least 1");
        let words: Vec<String> = self.language(n).iter().cloned().collect();
        let index: BTreeMap<&str, usize> =
            words.iter().enumerate().map(|(i, w)| (w.as_str(), i)).collect();
        let k = words.len();
        let mut m = vec![vec![BigInt::zero(); k]; k];
        for (j, w) in words.iter().enumerate() {
            let first = w.chars().next().expect("language words are nonempty");
            let lead = self.substitution.image(first).chars().count();
            let img: Vec<char> = self.substitution.apply(w).chars().collect();
            for start in 0..lead {
                let block: String = img[start..start + n].iter().collect();
                m[index[block.as_str()]][j] += 1;
            }
        }
        (words, m)
    }

    /// Exact frequencies of the length-`n` words under the unique
    /// invariant measure: the normalized kernel of `M_n - lambda I`.
    pub fn frequencies(&self, n: usize) -> Arc<BTreeMap<String, RealAlgebraic>> {
        if let Some(hit) = self.frequencies.lock().unwrap().get(&n) {
            return hit.clone();
        }
        let ctx = self.context();
        let (words, m) = self.block_matrix(n);
        let v = kernel_vector(&m, &ctx);
        let sum = v.iter().fold(RealAlgebraic::zero(&ctx), |acc, x| acc.add(x));
        let inv_sum = sum.invert().expect("eigenvector sum is nonzero");
        let result: BTreeMap<String, RealAlgebraic> = words
            .into_iter()
            .zip(v.into_iter().map(|x| x.mul(&inv_sum)))
            .collect();
        let result = Arc::new(result);
        self.frequencies.lock().unwrap().insert(n, result.clone());
        result
    }

    /// Frequency of one word, by its length.
    pub fn frequency_of(&self, word: &str) -> Option<RealAlgebraic> {
        let n = word.chars().count();
        self.frequencies(n).get(word).cloned()
    }
}

impl fmt::Debug for SubshiftComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.substitution)
    }
}

/// Kernel vector of `M - lambda I` for a simple eigenvalue `lambda`:
/// Gaussian elimination over the context, dividing by pivots through
/// exact inversion at the root.
fn kernel_vector(m: &[Vec<BigInt>], ctx: &Arc<AlgebraicContext>) -> Vec<RealAlgebraic> {
    let n = m.len();
    let lambda = RealAlgebraic::lambda(ctx);
    let mut a: Vec<Vec<RealAlgebraic>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = RealAlgebraic::constant(ctx, BigRational::from(m[i][j].clone()));
                    if i == j {
                        e.sub(&lambda)
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();

    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut row = 0usize;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].invert().expect("pivot is nonzero at the root");
        for r in row + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].mul(&inv);
            for c in col..n {
                let delta = factor.mul(&a[row][c]);
                a[r][c] = a[r][c].sub(&delta);
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
    }

    let free: Vec<usize> =
        (0..n).filter(|&c| pivot_of_col[c].is_none()).collect();
    assert_eq!(free.len(), 1, "dominant eigenvalue must be a simple root");
    let free_col = free[0];

    let mut v = vec![RealAlgebraic::zero(ctx); n];
    v[free_col] = RealAlgebraic::one(ctx);
    for col in (0..n).rev() {
        let Some(r) = pivot_of_col[col] else { continue };
        let mut acc = RealAlgebraic::zero(ctx);
        for c in col + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            acc = acc.add(&a[r][c].mul(&v[c]));
        }
        let inv = a[r][col].invert().expect("pivot is nonzero at the root");
        v[col] = acc.neg().mul(&inv);
    }
    v
}

/// A finite disjoint union of named components.
pub struct SystemSpace {
    components: Vec<Arc<SubshiftComponent>>,
}

impl SystemSpace {
    pub fn new(components: Vec<Arc<SubshiftComponent>>) -> Result<Self, SystemError> {
        if components.is_empty() {
            return Err(SystemError::EmptySpace);
        }
        let mut seen = BTreeSet::new();
        for c in &components {
            if !seen.insert(c.name().to_string()) {
                return Err(SystemError::DuplicateComponent(c.name().to_string()));
            }
        }
        Ok(SystemSpace { components })
    }

    /// A space with a single component.
    pub fn single(component: Arc<SubshiftComponent>) -> Self {
        SystemSpace { components: vec![component] }
    }

    /// Components in declaration order; measure order matches.
    pub fn components(&self) -> &[Arc<SubshiftComponent>] {
        &self.components
    }

    pub fn component(&self, name: &str) -> Result<&Arc<SubshiftComponent>, SystemError> {
        self.components
            .iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| SystemError::UnknownComponent(name.to_string()))
    }

    pub fn index_of(&self, name: &str) -> Result<usize, SystemError> {
        self.components
            .iter()
            .position(|c| c.name() == name)
            .ok_or_else(|| SystemError::UnknownComponent(name.to_string()))
    }

    /// One ergodic measure per component.
    pub fn measure_count(&self) -> usize {
        self.components.len()
    }
}

impl fmt::Debug for SystemSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.components.iter().map(|c| c.name()).collect();
        write!(f, "space[{}]", names.join(" + "))
    }
}
