use super::labels::OrbitLabel;
use crate::error::{Error, Result};
use crate::exterior::AlternatingTensor;
use crate::field::PrimeField;

/// Letters of the canonical forms, mapped in this order to `e_0 .. e_7`.
pub const LETTERS: [char; 8] = ['a', 'b', 'c', 'p', 'q', 'r', 's', 't'];

/// Canonical forms as sums of triples `[xyz] = x ∧ y ∧ z`.
const FORMS: [&str; 23] = [
    "",
    "qrs",
    "aqp brp",
    "aqr brp cpq",
    "abc pqr",
    "aqp brp csp",
    "qrs aqp brp csp",
    "abc qrs aqp",
    "abc qrs aqp brp",
    "abc qrs aqp brp csp",
    "aqp brp csp crt",
    "qrs aqp brp csp crt",
    "abc qrs aqp crt",
    "abc qrs aqp brp crt",
    "abc qrs aqp brp csp crt",
    "aqp bst crt",
    "aqp brp bst crt",
    "qrs aqp brp bst crt",
    "aqp brp csp bst crt",
    "qrs aqp brp csp bst crt",
    "abc qrs aqp bst crt",
    "abc qrs aqp brp bst crt",
    "abc qrs aqp brp csp bst crt",
];

/// Affine orbit dimensions of the table.
pub const ORBIT_DIMS: [usize; 23] = [
    0, 16, 25, 31, 32, 28, 35, 38, 41, 42, 40, 43, 44, 46, 48, 41, 47, 50, 48, 52, 53, 55, 56,
];

/// Rows of the duality table as `(left, right)` 1-based orbit numbers.
pub const DUALITY_ROWS: [(usize, usize); 11] = [
    (2, 22),
    (3, 21),
    (4, 20),
    (5, 19),
    (6, 10),
    (7, 18),
    (8, 17),
    (9, 16),
    (11, 15),
    (12, 14),
    (13, 13),
];

/// Closure-order edges `(smaller, larger)` of the orbit poset.
pub const CLOSURE_EDGES: [(usize, usize); 29] = [
    (1, 2),
    (2, 3),
    (3, 6),
    (3, 4),
    (4, 5),
    (6, 7),
    (4, 7),
    (5, 8),
    (7, 8),
    (8, 11),
    (8, 9),
    (11, 16),
    (9, 10),
    (9, 12),
    (11, 12),
    (12, 13),
    (13, 14),
    (14, 17),
    (16, 17),
    (10, 15),
    (14, 15),
    (17, 19),
    (15, 18),
    (17, 18),
    (18, 20),
    (19, 20),
    (20, 21),
    (21, 22),
    (22, 23),
];

pub fn form_words(label: OrbitLabel) -> Vec<&'static str> {
    FORMS[label.index()].split_whitespace().collect()
}

fn letter_index(c: char) -> Result<usize> {
    LETTERS
        .iter()
        .position(|&l| l == c)
        .ok_or_else(|| Error::Parse(format!("letter `{c}` is not one of abcpqrst")))
}

/// `Σ x ∧ y ∧ z` over the given words, each wedged in the written order.
pub fn form_from_words(f: &PrimeField, words: &[&str]) -> Result<AlternatingTensor> {
    let mut t = AlternatingTensor::zero(3, 8);
    for w in words {
        let idx: Vec<usize> = w.chars().map(letter_index).collect::<Result<_>>()?;
        if idx.len() != 3 {
            return Err(Error::Parse(format!("`{w}` is not a 3-letter word")));
        }
        if idx[0] == idx[1] || idx[0] == idx[2] || idx[1] == idx[2] {
            return Err(Error::Parse(format!("`{w}` repeats a letter")));
        }
        let term = AlternatingTensor::wedge_of_basis(f, 8, &idx)?;
        t = t.add(f, &term)?;
    }
    Ok(t)
}

pub fn canonical_form(f: &PrimeField, label: OrbitLabel) -> AlternatingTensor {
    form_from_words(f, &form_words(label)).expect("embedded forms are well formed")
}

/// The embedded forms in the text format `XXIII: abc qrs aqp brp csp bst crt`.
pub fn canonical_forms_text() -> String {
    OrbitLabel::all()
        .map(|l| format!("{}: {}\n", l, FORMS[l.index()]).replace(": \n", ":\n"))
        .collect()
}

/// Parses the canonical forms text format; blank lines and `#` comments
/// are skipped.
pub fn parse_canonical_forms(text: &str) -> Result<Vec<(OrbitLabel, Vec<String>)>> {
    let mut out = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (label, words) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing `:` in `{line}`")))?;
        let label: OrbitLabel = label.parse()?;
        out.push((label, words.split_whitespace().map(String::from).collect()));
    }
    Ok(out)
}
