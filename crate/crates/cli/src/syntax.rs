//! Text forms accepted on the command line.
//!
//! Partitions: `{2,8,11}{5}{13,14,17}`, whitespace-insensitive.
//! Words: letters `Z` or `M[[a,b],[c,d]]` with rational entries `p/q`,
//! optionally separated by whitespace or commas.

use gjs3_core::matrix::RationalMatrix;
use gjs3_core::model::ModelLetter;
use gjs3_core::scalar::{self, Scalar};

use crate::error::{CliError, Result};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn parse_blocks(text: &str) -> Result<Vec<Vec<u32>>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Ok(Vec::new());
    }
    let Some(inner) = compact.strip_prefix('{').and_then(|s| s.strip_suffix('}')) else {
        return Err(usage(format!(
            "partition {text:?} must look like {{1,3}}{{2}}"
        )));
    };
    inner
        .split("}{")
        .map(|block| {
            block
                .split(',')
                .map(|x| {
                    x.parse::<u32>()
                        .map_err(|_| usage(format!("bad element {x:?} in partition {text:?}")))
                })
                .collect()
        })
        .collect()
}

pub fn parse_list(text: &str) -> Result<Vec<u32>> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| usage(format!("bad list element {x:?}")))
        })
        .collect()
}

pub fn parse_rationals(text: &str) -> Result<Vec<Scalar>> {
    text.split(',').map(|x| Ok(scalar::parse(x)?)).collect()
}

pub fn parse_word(text: &str) -> Result<Vec<ModelLetter>> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut word = Vec::new();
    while i < chars.len() {
        match chars[i] {
            c if c.is_whitespace() || c == ',' => i += 1,
            'Z' => {
                word.push(ModelLetter::Z);
                i += 1;
            }
            'M' => {
                let start = i + 1;
                let mut depth = 0i32;
                let mut end = None;
                for (j, &c) in chars.iter().enumerate().skip(start) {
                    match c {
                        '[' => depth += 1,
                        ']' => {
                            depth -= 1;
                            if depth == 0 {
                                end = Some(j);
                                break;
                            }
                        }
                        c if depth == 0 && !c.is_whitespace() => break,
                        _ => {}
                    }
                }
                let end =
                    end.ok_or_else(|| usage(format!("unterminated matrix letter in {text:?}")))?;
                let body: String = chars[start..=end].iter().collect();
                word.push(ModelLetter::Matrix(parse_matrix(&body)?));
                i = end + 1;
            }
            c => {
                return Err(usage(format!(
                    "unexpected {c:?} in word {text:?}; letters are Z or M[[..],..]"
                )))
            }
        }
    }
    Ok(word)
}

/// `[[a,b],[c,d]]`.
pub fn parse_matrix(text: &str) -> Result<RationalMatrix> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix("[[")
        .and_then(|s| s.strip_suffix("]]"))
        .ok_or_else(|| usage(format!("matrix {text:?} must look like [[a,b],[c,d]]")))?;
    let rows = inner
        .split("],[")
        .map(parse_rationals)
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalMatrix::from_rows(rows)?)
}
