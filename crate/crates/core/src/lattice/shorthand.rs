//! Compact text form: `{2,3,5}` is written `235`.
//!
//! Elements 1..9 are digits, 10..20 are the letters `a`..`k`. The empty set
//! is `0` (`∅` is also accepted). A family is a comma-separated list of sets,
//! optionally wrapped in braces.

use crate::lattice::{check_ground_size, Family, SetWord};
use crate::{Error, Result};

fn element_char(e: usize) -> char {
    match e {
        1..=9 => char::from(b'0' + e as u8),
        10..=20 => char::from(b'a' + (e - 10) as u8),
        _ => unreachable!("element {e} outside 1..=20"),
    }
}

fn char_element(c: char) -> Option<usize> {
    match c {
        '1'..='9' => Some(c as usize - '0' as usize),
        'a'..='k' => Some(c as usize - 'a' as usize + 10),
        'A'..='K' => Some(c as usize - 'A' as usize + 10),
        _ => None,
    }
}

pub fn render_set(s: SetWord) -> String {
    if s.is_empty() {
        return "0".to_string();
    }
    s.elements().map(element_char).collect()
}

/// Members in increasing bitmask order, comma separated.
pub fn render_family(family: &Family) -> String {
    render_sets(family.members())
}

/// Members other than the prefix sets `C_0..C_n`, as in the catalog tables.
pub fn render_off_chain(family: &Family) -> String {
    render_sets(&family.off_chain())
}

pub(crate) fn render_sets(sets: &[SetWord]) -> String {
    sets.iter()
        .map(|&s| render_set(s))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_set(text: &str, n: usize) -> Result<SetWord> {
    check_ground_size(n)?;
    parse_token(text.trim(), 0, n)
}

/// `offset` is the character position of `token` in the enclosing input.
fn parse_token(token: &str, offset: usize, n: usize) -> Result<SetWord> {
    if token.is_empty() {
        return Err(Error::Parse {
            position: offset,
            message: "empty set token".into(),
        });
    }
    if token == "0" || token == "∅" {
        return Ok(SetWord::EMPTY);
    }
    let mut bits = 0u32;
    for (k, c) in token.chars().enumerate() {
        let position = offset + k;
        let e = char_element(c).ok_or_else(|| Error::Parse {
            position,
            message: format!("unexpected character {c:?}"),
        })?;
        if e > n {
            return Err(Error::Parse {
                position,
                message: format!("element {e} exceeds ground size {n}"),
            });
        }
        if bits >> (e - 1) & 1 == 1 {
            return Err(Error::Parse {
                position,
                message: format!("element {e} repeated"),
            });
        }
        bits |= 1 << (e - 1);
    }
    Ok(SetWord(bits))
}

/// Parses a list of sets; duplicates collapse.
pub fn parse_family(text: &str, n: usize) -> Result<Family> {
    Family::new(n, parse_sets(text, n)?)
}

pub(crate) fn parse_sets(text: &str, n: usize) -> Result<Vec<SetWord>> {
    check_ground_size(n)?;
    let chars: Vec<char> = text.chars().collect();
    let mut start = 0;
    let mut end = chars.len();
    while start < end && chars[start].is_whitespace() {
        start += 1;
    }
    while end > start && chars[end - 1].is_whitespace() {
        end -= 1;
    }
    if start < end && chars[start] == '{' {
        if chars[end - 1] != '}' {
            return Err(Error::Parse {
                position: end - 1,
                message: "unbalanced brace".into(),
            });
        }
        start += 1;
        end -= 1;
    }
    let body: String = chars[start..end].iter().collect();
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }

    let mut sets = Vec::new();
    let mut offset = start;
    for piece in body.split(',') {
        let width = piece.chars().count();
        let lead = piece.chars().take_while(|c| c.is_whitespace()).count();
        let token = piece.trim();
        sets.push(parse_token(token, offset + lead, n)?);
        offset += width + 1;
    }
    Ok(sets)
}
