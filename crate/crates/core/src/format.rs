//! The `omnimosaic v1` text format.
//!
//! ```text
//! omnimosaic v1
//! <rows> <cols> <a>
//! <cols letters>      (repeated `rows` times)
//! ```
//!
//! Fields are decimal and separated by single spaces, lines end in LF and the
//! file ends with a newline. The parser tolerates runs of whitespace inside a
//! line; the serializer always writes the canonical form.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::{Alphabet, MosaicMatrix};

pub const MAGIC: &str = "omnimosaic v1";

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| err(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_matrix(text: &str) -> Result<MosaicMatrix> {
    if !text.ends_with('\n') {
        return Err(err(text.lines().count().max(1), "missing trailing newline"));
    }
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (ln, magic) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    if magic.trim_end() != MAGIC {
        return Err(err(ln, format!("expected `{MAGIC}` header, found `{magic}`")));
    }

    let (ln, dims) = lines.next().ok_or_else(|| err(2, "missing dimension line"))?;
    let toks: Vec<&str> = dims.split_whitespace().collect();
    if toks.len() != 3 {
        return Err(err(ln, "dimension line must be `<rows> <cols> <a>`"));
    }
    let rows: usize = parse_num(toks[0], ln, "row count")?;
    let cols: usize = parse_num(toks[1], ln, "column count")?;
    let a_raw: u64 = parse_num(toks[2], ln, "alphabet size")?;
    if rows == 0 || cols == 0 {
        return Err(err(ln, "dimensions must be positive"));
    }
    let alphabet = u32::try_from(a_raw)
        .map_err(|_| Error::InvalidAlphabet(a_raw))
        .and_then(Alphabet::new)
        .map_err(|e| err(ln, e.to_string()))?;

    let mut entries = Vec::with_capacity(rows.saturating_mul(cols).min(1 << 24));
    for r in 0..rows {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| err(3 + r, format!("expected {rows} matrix rows, found {r}")))?;
        let before = entries.len();
        for tok in line.split_whitespace() {
            let v: u32 = parse_num(tok, ln, "letter")?;
            if v >= alphabet.size() {
                return Err(err(
                    ln,
                    format!("letter {v} outside alphabet of size {}", alphabet.size()),
                ));
            }
            entries.push(v as u8);
        }
        let got = entries.len() - before;
        if got != cols {
            return Err(err(ln, format!("row has {got} entries, expected {cols}")));
        }
    }
    if let Some((ln, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(err(ln, "unexpected content after the last matrix row"));
    }
    MosaicMatrix::new(rows, cols, alphabet, entries)
}

pub fn serialize_matrix(m: &MosaicMatrix) -> String {
    let mut out = String::with_capacity(32 + m.rows() * m.cols() * 2);
    out.push_str(MAGIC);
    out.push('\n');
    let _ = writeln!(out, "{} {} {}", m.rows(), m.cols(), m.alphabet().size());
    for r in 0..m.rows() {
        for (j, v) in m.row(r).iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}
