//! The LIFO cylinder as a discrete state machine.
//!
//! A cylinder of capacity `p` holds `0..=p` balls stacked from position 1.
//! A ball may be created at position `alpha` only when exactly positions
//! `1..alpha` are filled, and removed from `alpha` only when it is the top
//! ball. Any other action annihilates the state ([`CylinderState::Null`]).
//!
//! The machine is an independent oracle for the cylinder matrices: see
//! [`check_equivalence`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::report::VerificationReport;
use crate::representations::{b_dag_op, b_op};

/// Fill level of the cylinder, or the annihilated state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CylinderState {
    Fill(usize),
    Null,
}

impl fmt::Display for CylinderState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CylinderState::Fill(k) => write!(f, "{k}"),
            CylinderState::Null => f.write_str("null"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Create,
    Annihilate,
}

/// `b_alpha^dag` (create) or `b_alpha` (annihilate). Written `b+k` / `b-k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Token {
    pub kind: TokenKind,
    pub position: usize,
}

impl Token {
    pub fn create(position: usize) -> Self {
        Self {
            kind: TokenKind::Create,
            position,
        }
    }

    pub fn annihilate(position: usize) -> Self {
        Self {
            kind: TokenKind::Annihilate,
            position,
        }
    }

    pub fn matrix(&self, p: usize) -> Result<Operator> {
        match self.kind {
            TokenKind::Create => b_dag_op(p, self.position),
            TokenKind::Annihilate => b_op(p, self.position),
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.kind {
            TokenKind::Create => '+',
            TokenKind::Annihilate => '-',
        };
        write!(f, "b{sign}{}", self.position)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenParseError(pub String);

impl fmt::Display for TokenParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid token {:?}: expected b+k or b-k", self.0)
    }
}

impl std::error::Error for TokenParseError {}

impl FromStr for Token {
    type Err = TokenParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let err = || TokenParseError(s.to_string());
        let rest = s.strip_prefix('b').ok_or_else(err)?;
        let (kind, digits) = if let Some(d) = rest.strip_prefix('+') {
            (TokenKind::Create, d)
        } else if let Some(d) = rest.strip_prefix('-') {
            (TokenKind::Annihilate, d)
        } else {
            return Err(err());
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let position = digits.parse().map_err(|_| err())?;
        Ok(Token { kind, position })
    }
}

/// A product of cylinder operators, written left to right as in operator
/// notation and applied right to left.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OpWord(pub Vec<Token>);

impl OpWord {
    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    fn check(&self, p: usize) -> Result<()> {
        for t in &self.0 {
            if !(1..=p).contains(&t.position) {
                return Err(Error::IndexOutOfRange {
                    index: t.position,
                    p,
                });
            }
        }
        Ok(())
    }
}

impl FromStr for OpWord {
    type Err = TokenParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map(OpWord)
    }
}

impl fmt::Display for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// One transition of the machine.
pub fn step(p: usize, state: CylinderState, token: Token) -> Result<CylinderState> {
    if !(1..=p).contains(&token.position) {
        return Err(Error::IndexOutOfRange {
            index: token.position,
            p,
        });
    }
    let alpha = token.position;
    Ok(match (state, token.kind) {
        (CylinderState::Fill(k), TokenKind::Create) if k + 1 == alpha => CylinderState::Fill(alpha),
        (CylinderState::Fill(k), TokenKind::Annihilate) if k == alpha => {
            CylinderState::Fill(alpha - 1)
        }
        _ => CylinderState::Null,
    })
}

/// Applies `word` right to left, returning every intermediate state
/// (starting with `initial`).
pub fn trace_word(p: usize, word: &OpWord, initial: CylinderState) -> Result<Vec<CylinderState>> {
    word.check(p)?;
    if let CylinderState::Fill(k) = initial {
        if k > p {
            return Err(Error::IndexOutOfRange { index: k, p });
        }
    }
    let mut states = vec![initial];
    let mut state = initial;
    for &t in word.0.iter().rev() {
        state = step(p, state, t)?;
        states.push(state);
    }
    Ok(states)
}

pub fn run_word(p: usize, word: &OpWord, initial: CylinderState) -> Result<CylinderState> {
    Ok(*trace_word(p, word, initial)?
        .last()
        .expect("trace always holds the initial state"))
}

/// Ordered product of the word's `(p+1)`-dimensional cylinder matrices.
pub fn word_matrix(p: usize, word: &OpWord) -> Result<Operator> {
    word.check(p)?;
    let factors = word
        .0
        .iter()
        .map(|t| t.matrix(p))
        .collect::<Result<Vec<_>>>()?;
    Operator::product(p + 1, &factors)
}

pub const MAX_ORDER: usize = 6;
pub const MAX_WORD_LEN: usize = 6;

/// Totals from an exhaustive matrix-versus-machine comparison.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EquivalenceStats {
    /// Words enumerated, indexed by length (index 0 unused).
    pub words: Vec<usize>,
    /// Mismatches between matrix column and machine state, per length.
    pub failures: Vec<usize>,
    /// Largest entrywise discrepancy seen, per length.
    pub max_residual: Vec<f64>,
    /// Word matrices that are not partial 0/1 injections, per length.
    pub structure_violations: Vec<usize>,
    pub initial_states: usize,
}

impl EquivalenceStats {
    pub fn total_words(&self) -> usize {
        self.words.iter().sum()
    }

    pub fn total_failures(&self) -> usize {
        self.failures.iter().sum()
    }
}

fn is_partial_injection(m: &Operator) -> bool {
    let n = m.dim();
    let entries_ok = m
        .entries()
        .iter()
        .all(|z| z.im == 0.0 && (z.re == 0.0 || z.re == 1.0));
    entries_ok && (0..n).all(|j| m.column(j).iter().filter(|z| z.re != 0.0).count() <= 1)
}

/// Enumerates every word over the `2p` tokens of length `1..=max_len`
/// and every initial fill, comparing the matrix action on the basis
/// vector with the machine's result.
pub fn equivalence_stats(p: usize, max_len: usize) -> Result<EquivalenceStats> {
    if !(1..=MAX_ORDER).contains(&p) || !(1..=MAX_WORD_LEN).contains(&max_len) {
        return Err(Error::EnumerationBounds { p, max_len });
    }
    let alphabet: Vec<Token> = (1..=p)
        .flat_map(|a| [Token::create(a), Token::annihilate(a)])
        .collect();
    let matrices: Vec<Operator> = alphabet
        .iter()
        .map(|t| t.matrix(p))
        .collect::<Result<_>>()?;

    let mut stats = EquivalenceStats {
        words: vec![0; max_len + 1],
        failures: vec![0; max_len + 1],
        max_residual: vec![0.0; max_len + 1],
        structure_violations: vec![0; max_len + 1],
        initial_states: p + 1,
    };

    // Words grow on the left: the new leftmost token acts last, so the
    // product is M(t) * M(rest) and each machine result steps once more.
    struct Frame {
        matrix: Operator,
        results: Vec<CylinderState>,
        len: usize,
    }
    let initial: Vec<CylinderState> = (0..=p).map(CylinderState::Fill).collect();
    let mut stack = vec![Frame {
        matrix: Operator::identity(p + 1),
        results: initial,
        len: 0,
    }];

    while let Some(frame) = stack.pop() {
        if frame.len == max_len {
            continue;
        }
        for (tok, m) in alphabet.iter().zip(&matrices) {
            let matrix = m.mul(&frame.matrix)?;
            let results = frame
                .results
                .iter()
                .map(|&s| step(p, s, *tok))
                .collect::<Result<Vec<_>>>()?;
            let len = frame.len + 1;
            stats.words[len] += 1;
            if !is_partial_injection(&matrix) {
                stats.structure_violations[len] += 1;
            }
            for (init, result) in results.iter().enumerate() {
                let column = matrix.column(init);
                let mut residual = 0.0f64;
                for (i, z) in column.iter().enumerate() {
                    let expected = match result {
                        CylinderState::Fill(k) if *k == i => 1.0,
                        _ => 0.0,
                    };
                    residual = residual.max((z - crate::Complex::new(expected, 0.0)).norm());
                }
                if residual != 0.0 {
                    stats.failures[len] += 1;
                }
                stats.max_residual[len] = stats.max_residual[len].max(residual);
            }
            stack.push(Frame {
                matrix,
                results,
                len,
            });
        }
    }
    Ok(stats)
}

/// Exhaustive matrix-versus-machine comparison as a report.
pub fn check_equivalence(p: usize, max_len: usize) -> Result<VerificationReport> {
    let stats = equivalence_stats(p, max_len)?;
    let mut report = VerificationReport::new("cylinder-machine", p, 0);
    for len in 1..=max_len {
        report.record(
            format!(
                "machine agreement, length {len} ({} words x {} states, {} failures)",
                stats.words[len], stats.initial_states, stats.failures[len]
            ),
            "word matrix |s> = |machine(word, s)>",
            stats.max_residual[len],
            0.0,
            0,
        );
        report.record(
            format!(
                "0/1 partial injection, length {len} ({} violations)",
                stats.structure_violations[len]
            ),
            "entries in {0,1}, at most one nonzero per column",
            stats.structure_violations[len] as f64,
            0.0,
            0,
        );
    }
    Ok(report)
}
