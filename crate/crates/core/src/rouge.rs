//! ROUGE-L F-measure over whitespace tokens.

use crate::scalar::Scalar;

/// Whitespace tokenizer with optional lowercasing and punctuation trimming.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tokenizer {
    pub lowercase: bool,
    pub strip_punctuation: bool,
}

impl Default for Tokenizer {
    fn default() -> Self {
        Self {
            lowercase: true,
            strip_punctuation: true,
        }
    }
}

impl Tokenizer {
    pub fn tokenize(&self, text: &str) -> Vec<String> {
        text.split_whitespace()
            .map(|tok| {
                let tok = if self.strip_punctuation {
                    tok.trim_matches(|c: char| c.is_ascii_punctuation() || is_unicode_punct(c))
                } else {
                    tok
                };
                if self.lowercase {
                    tok.to_lowercase()
                } else {
                    tok.to_string()
                }
            })
            .filter(|tok| !tok.is_empty())
            .collect()
    }
}

fn is_unicode_punct(c: char) -> bool {
    matches!(
        c,
        '\u{2018}' | '\u{2019}' | '\u{201C}' | '\u{201D}' | '\u{2026}' | '\u{2013}' | '\u{2014}'
            | '\u{00BF}' | '\u{00A1}' | '\u{00AB}' | '\u{00BB}'
    )
}

pub fn tokenize(text: &str) -> Vec<String> {
    Tokenizer::default().tokenize(text)
}

/// Length of the longest common subsequence.
pub fn lcs_len<S: PartialEq>(a: &[S], b: &[S]) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            cur[j + 1] = if x == y {
                prev[j] + 1
            } else {
                cur[j].max(prev[j + 1])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// ROUGE-L F1: `2PR / (P + R)` with `P = LCS/|a|`, `R = LCS/|b|`.
pub fn rouge_l<T: Scalar, S: PartialEq>(a: &[S], b: &[S]) -> T {
    let lcs = lcs_len(a, b);
    if lcs == 0 {
        return T::zero();
    }
    // 2PR/(P+R) simplifies to 2 LCS / (|a| + |b|), which is exactly symmetric
    T::from_count(2 * lcs) / T::from_count(a.len() + b.len())
}
