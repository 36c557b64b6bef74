//! Text encodings of Bott matrices.
//!
//! * `bin`: rows of `0`/`1` separated by `/` or whitespace, e.g. `010/001/000`.
//! * `hex`: `n:` followed by the strictly upper triangular bits in row-major
//!   order, most significant first, as hexadecimal. `010/001/000` is `3:5`.
//! * `d6`: McKay's digraph6.

use std::fmt;
use std::str::FromStr;

use bott_core::{is_bott, BottError, BottMatrix, MAX_N};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed {format} input: {reason}")]
    Malformed { format: Format, reason: String },
    #[error("digraph has a directed cycle")]
    NotAcyclic,
    #[error("matrix is not strictly upper triangular")]
    NotStrictlyUpper,
    #[error(transparent)]
    Bott(#[from] BottError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Bin,
    Hex,
    D6,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Bin => "bin",
            Format::Hex => "hex",
            Format::D6 => "d6",
        })
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bin" => Ok(Format::Bin),
            "hex" => Ok(Format::Hex),
            "d6" => Ok(Format::D6),
            other => Err(format!("unknown format `{other}` (expected bin, hex or d6)")),
        }
    }
}

impl Format {
    /// Guesses the format of a single record.
    pub fn detect(text: &str) -> Format {
        let t = text.trim_start();
        if t.starts_with('&') {
            Format::D6
        } else if t.contains(':') {
            Format::Hex
        } else {
            Format::Bin
        }
    }
}

fn malformed(format: Format, reason: impl Into<String>) -> FormatError {
    FormatError::Malformed {
        format,
        reason: reason.into(),
    }
}

fn validated(n: usize, rows: &[u64]) -> Result<BottMatrix, FormatError> {
    if !is_bott(n, rows)? {
        return Err(FormatError::NotAcyclic);
    }
    Ok(BottMatrix::from_rows(n, rows)?)
}

/// Parses a record in `format`, or in the detected format when `None`.
pub fn parse(text: &str, format: Option<Format>) -> Result<BottMatrix, FormatError> {
    match format.unwrap_or_else(|| Format::detect(text)) {
        Format::Bin => parse_bin(text),
        Format::Hex => parse_hex(text),
        Format::D6 => parse_digraph6(text),
    }
}

pub fn encode(a: &BottMatrix, format: Format) -> Result<String, FormatError> {
    match format {
        Format::Bin => Ok(encode_bin(a)),
        Format::Hex => encode_hex(a),
        Format::D6 => Ok(encode_digraph6(a)),
    }
}

pub fn parse_bin(text: &str) -> Result<BottMatrix, FormatError> {
    let rows: Vec<&str> = text
        .split(|c: char| c == '/' || c.is_whitespace())
        .filter(|r| !r.is_empty())
        .collect();
    let n = rows.len();
    if n == 0 {
        return Err(malformed(Format::Bin, "no rows"));
    }
    if n > MAX_N {
        return Err(BottError::InvalidSize(n).into());
    }
    let mut bits = vec![0u64; n];
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(malformed(
                Format::Bin,
                format!("row {i} has length {}, expected {n}", row.len()),
            ));
        }
        for (j, c) in row.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits[i] |= 1 << j,
                other => return Err(malformed(Format::Bin, format!("unexpected character `{other}`"))),
            }
        }
    }
    validated(n, &bits)
}

pub fn encode_bin(a: &BottMatrix) -> String {
    a.bit_rows().join("/")
}

pub fn parse_hex(text: &str) -> Result<BottMatrix, FormatError> {
    let text = text.trim();
    let (size, digits) = text
        .split_once(':')
        .ok_or_else(|| malformed(Format::Hex, "missing `:`"))?;
    let n: usize = size
        .parse()
        .map_err(|_| malformed(Format::Hex, format!("bad size `{size}`")))?;
    if n == 0 || n > MAX_N {
        return Err(BottError::InvalidSize(n).into());
    }
    let len = n * (n - 1) / 2;
    let mut bits = Vec::with_capacity(digits.len() * 4);
    for c in digits.chars() {
        let d = c
            .to_digit(16)
            .ok_or_else(|| malformed(Format::Hex, format!("bad hex digit `{c}`")))?;
        bits.extend((0..4).rev().map(|k| d >> k & 1 == 1));
    }
    let excess = bits.len().saturating_sub(len);
    if bits[..excess].iter().any(|&b| b) {
        return Err(malformed(Format::Hex, format!("value does not fit in {len} bits")));
    }
    let mut upper = vec![false; len - bits.len().min(len)];
    upper.extend_from_slice(&bits[excess..]);
    let mut rows = vec![0u64; n];
    let mut it = upper.into_iter();
    for (i, row) in rows.iter_mut().enumerate() {
        for j in i + 1..n {
            if it.next() == Some(true) {
                *row |= 1 << j;
            }
        }
    }
    validated(n, &rows)
}

/// Fails unless `a` is strictly upper triangular; canonical forms always are.
pub fn encode_hex(a: &BottMatrix) -> Result<String, FormatError> {
    if !a.is_strictly_upper() {
        return Err(FormatError::NotStrictlyUpper);
    }
    let n = a.n();
    let mut bits: Vec<bool> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| a.get(i, j))
        .collect();
    let digits = bits.len().div_ceil(4).max(1);
    let mut padded = vec![false; digits * 4 - bits.len()];
    padded.append(&mut bits);
    let hex: String = padded
        .chunks(4)
        .map(|c| {
            let d = c.iter().fold(0u32, |acc, &b| acc << 1 | b as u32);
            char::from_digit(d, 16).unwrap()
        })
        .collect();
    Ok(format!("{n}:{hex}"))
}

pub fn parse_digraph6(text: &str) -> Result<BottMatrix, FormatError> {
    let bytes = text.trim().as_bytes();
    let body = bytes
        .strip_prefix(b"&")
        .ok_or_else(|| malformed(Format::D6, "missing `&` header"))?;
    if let Some(&b) = body.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(malformed(Format::D6, format!("byte {b} outside 63..=126")));
    }
    let (n, rest) = match body {
        [] => return Err(malformed(Format::D6, "missing size")),
        [126, 126, ..] => return Err(malformed(Format::D6, "size too large")),
        [126, a, b, c, rest @ ..] => {
            let n = [a, b, c].iter().fold(0usize, |acc, &&x| acc << 6 | (x - 63) as usize);
            (n, rest)
        }
        [126, ..] => return Err(malformed(Format::D6, "truncated size")),
        [x, rest @ ..] => ((x - 63) as usize, rest),
    };
    if n == 0 || n > MAX_N {
        return Err(BottError::InvalidSize(n).into());
    }
    let need = (n * n).div_ceil(6);
    if rest.len() != need {
        return Err(malformed(
            Format::D6,
            format!("expected {need} data bytes, found {}", rest.len()),
        ));
    }
    let mut rows = vec![0u64; n];
    for k in 0..n * n {
        if (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1 {
            rows[k / n] |= 1 << (k % n);
        }
    }
    let padding = rest.len() * 6 - n * n;
    if padding > 0 && (rest[need - 1] - 63) & ((1 << padding) - 1) != 0 {
        return Err(malformed(Format::D6, "nonzero padding bits"));
    }
    validated(n, &rows)
}

pub fn encode_digraph6(a: &BottMatrix) -> String {
    let n = a.n();
    let mut out = String::from("&");
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift & 63) as u8 + 63) as char);
        }
    }
    let bits: Vec<bool> = (0..n * n).map(|k| a.get(k / n, k % n)).collect();
    for chunk in bits.chunks(6) {
        let v = chunk
            .iter()
            .enumerate()
            .fold(0u8, |acc, (i, &b)| acc | (b as u8) << (5 - i));
        out.push((v + 63) as char);
    }
    out
}
