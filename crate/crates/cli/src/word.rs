//! The word grammar shared by every command.
//!
//! Tokens are whitespace separated. A token is a generator name, an
//! optional trailing `'` for the inverse and an optional `^n` repeat:
//! `a b' a^3 b'^2`. Generator names follow chord order, `a` to `z`.
//! The empty string and `1` are the empty word.

use liftspace::complex::Pi1Basis;
use liftspace::groups::{Letter, Word};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown generator `{name}` (this graph has {rank})")]
    UnknownGenerator { name: String, rank: usize },
    #[error("malformed token `{0}`")]
    Malformed(String),
}

pub fn parse_word(text: &str, basis: &Pi1Basis) -> Result<Word, WordError> {
    let names = basis.generator_names();
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        if token == "1" {
            continue;
        }
        let split = token.find(['\'', '^']).unwrap_or(token.len());
        let (name, mut rest) = token.split_at(split);
        let generator = names.iter().position(|n| n == name).ok_or_else(|| {
            if name.is_empty() {
                WordError::Malformed(token.to_string())
            } else {
                WordError::UnknownGenerator { name: name.to_string(), rank: names.len() }
            }
        })?;
        let inverse = match rest.strip_prefix('\'') {
            Some(r) => {
                rest = r;
                true
            }
            None => false,
        };
        let count = match rest {
            "" => 1,
            r => r
                .strip_prefix('^')
                .and_then(|n| n.parse::<usize>().ok())
                .ok_or_else(|| WordError::Malformed(token.to_string()))?,
        };
        letters.extend(std::iter::repeat_n(Letter::new(generator, inverse), count));
    }
    Ok(Word::reduce(letters))
}

/// Writes a word in the grammar, grouping runs as `a^k`. The empty word
/// is `1`.
pub fn format_word(word: &Word, basis: &Pi1Basis) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let names = basis.generator_names();
    let mut out: Vec<String> = Vec::new();
    let letters = word.letters();
    let mut i = 0;
    while i < letters.len() {
        let run = letters[i..].iter().take_while(|&&l| l == letters[i]).count();
        let l = letters[i];
        let mut token = names[l.generator].clone();
        if l.inverse {
            token.push('\'');
        }
        if run > 1 {
            token.push_str(&format!("^{run}"));
        }
        out.push(token);
        i += run;
    }
    out.join(" ")
}
