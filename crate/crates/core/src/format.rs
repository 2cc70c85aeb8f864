//! Text serializations of matrices.
//!
//! * `dense`: one line of `0`/`1` characters per row.
//! * `coords`: a `# <rows> <cols>` header, then one `row col` line per
//!   1-entry in row-major order.
//! * `pbm`: plain portable bitmap (`P1`), `1` = black = matrix entry 1.
//! * `json`: `{"m", "n", "a", "b", "seed", "rows"}` with rows as `0`/`1`
//!   strings; several matrices form an array.
//!
//! In the three text formats consecutive matrices are separated by one blank
//! line. Every format round-trips through [`parse`].

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;
use crate::validate::detect;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutputFormat {
    Dense,
    Coords,
    Pbm,
    Json,
}

impl OutputFormat {
    pub const ALL: [OutputFormat; 4] = [
        OutputFormat::Dense,
        OutputFormat::Coords,
        OutputFormat::Pbm,
        OutputFormat::Json,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Dense => "dense",
            OutputFormat::Coords => "coords",
            OutputFormat::Pbm => "pbm",
            OutputFormat::Json => "json",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        OutputFormat::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown format {s:?}"))
    }
}

/// One JSON record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonMatrix {
    pub m: usize,
    pub n: usize,
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub seed: Option<u64>,
    pub rows: Vec<String>,
}

impl JsonMatrix {
    pub fn from_matrix(matrix: &BinaryMatrix, seed: Option<u64>) -> Self {
        let d = detect(matrix);
        JsonMatrix {
            m: matrix.rows(),
            n: matrix.cols(),
            a: d.row_sum,
            b: d.col_sum,
            seed,
            rows: matrix.to_string().lines().map(str::to_owned).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<BinaryMatrix> {
        if self.rows.len() != self.m {
            return Err(parse_err(
                1,
                format!("expected {} rows, found {}", self.m, self.rows.len()),
            ));
        }
        let mut out = BinaryMatrix::zeros(self.m, self.n);
        for (i, row) in self.rows.iter().enumerate() {
            fill_row(&mut out, i, row, 1)?;
        }
        Ok(out)
    }
}

/// A matrix with the seed that produced it, for rendering.
#[derive(Debug, Clone, Copy)]
pub struct Entry<'a> {
    pub matrix: &'a BinaryMatrix,
    pub seed: Option<u64>,
}

pub fn render(matrix: &BinaryMatrix, format: OutputFormat) -> String {
    render_entries(&[Entry { matrix, seed: None }], format)
}

pub fn render_entries(entries: &[Entry<'_>], format: OutputFormat) -> String {
    if format == OutputFormat::Json {
        let records: Vec<JsonMatrix> = entries
            .iter()
            .map(|e| JsonMatrix::from_matrix(e.matrix, e.seed))
            .collect();
        let mut s = if records.len() == 1 {
            serde_json::to_string_pretty(&records[0])
        } else {
            serde_json::to_string_pretty(&records)
        }
        .expect("json serialization of plain data");
        s.push('\n');
        return s;
    }
    let mut out = String::new();
    for (idx, e) in entries.iter().enumerate() {
        if idx > 0 {
            out.push('\n');
        }
        render_text(&mut out, e.matrix, format);
    }
    out
}

fn render_text(out: &mut String, m: &BinaryMatrix, format: OutputFormat) {
    match format {
        OutputFormat::Dense => {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    out.push(if m.get(i, j) { '1' } else { '0' });
                }
                out.push('\n');
            }
        }
        OutputFormat::Coords => {
            let _ = writeln!(out, "# {} {}", m.rows(), m.cols());
            for (i, j) in m.ones_positions() {
                let _ = writeln!(out, "{i} {j}");
            }
        }
        OutputFormat::Pbm => {
            let _ = writeln!(out, "P1\n{} {}", m.cols(), m.rows());
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    if j > 0 {
                        out.push(' ');
                    }
                    out.push(if m.get(i, j) { '1' } else { '0' });
                }
                out.push('\n');
            }
        }
        OutputFormat::Json => unreachable!("handled by render_entries"),
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn fill_row(m: &mut BinaryMatrix, i: usize, text: &str, line: usize) -> Result<()> {
    if text.chars().count() != m.cols() {
        return Err(parse_err(
            line,
            format!(
                "row has {} entries, expected {}",
                text.chars().count(),
                m.cols()
            ),
        ));
    }
    for (j, c) in text.chars().enumerate() {
        match c {
            '0' => {}
            '1' => m.set(i, j, true),
            other => return Err(parse_err(line, format!("unexpected character {other:?}"))),
        }
    }
    Ok(())
}

/// Parses every matrix in `text`.
pub fn parse(text: &str, format: OutputFormat) -> Result<Vec<BinaryMatrix>> {
    let out = match format {
        OutputFormat::Dense => blocks(text)
            .into_iter()
            .map(|(start, lines)| parse_dense(start, &lines))
            .collect::<Result<Vec<_>>>()?,
        OutputFormat::Coords => blocks(text)
            .into_iter()
            .map(|(start, lines)| parse_coords(start, &lines))
            .collect::<Result<Vec<_>>>()?,
        OutputFormat::Pbm => parse_pbm(text)?,
        OutputFormat::Json => parse_json(text)?,
    };
    if out.is_empty() {
        return Err(parse_err(1, "no matrix found"));
    }
    Ok(out)
}

/// Parses exactly one matrix.
pub fn parse_one(text: &str, format: OutputFormat) -> Result<BinaryMatrix> {
    let mut all = parse(text, format)?;
    if all.len() != 1 {
        return Err(parse_err(
            1,
            format!("expected one matrix, found {}", all.len()),
        ));
    }
    Ok(all.remove(0))
}

/// Groups non-blank lines into blank-line separated blocks, keeping the
/// 1-based line number of each block's first line.
fn blocks(text: &str) -> Vec<(usize, Vec<&str>)> {
    let mut out = Vec::new();
    let mut cur: Vec<&str> = Vec::new();
    let mut start = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            if !cur.is_empty() {
                out.push((start, std::mem::take(&mut cur)));
            }
        } else {
            if cur.is_empty() {
                start = idx + 1;
            }
            cur.push(line);
        }
    }
    if !cur.is_empty() {
        out.push((start, cur));
    }
    out
}

fn parse_dense(start: usize, lines: &[&str]) -> Result<BinaryMatrix> {
    let cols = lines[0].trim().chars().count();
    let mut m = BinaryMatrix::zeros(lines.len(), cols);
    for (i, line) in lines.iter().enumerate() {
        fill_row(&mut m, i, line.trim(), start + i)?;
    }
    Ok(m)
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("bad {what}")))
}

fn parse_coords(start: usize, lines: &[&str]) -> Result<BinaryMatrix> {
    let header = lines[0]
        .strip_prefix('#')
        .ok_or_else(|| parse_err(start, "coords block must start with '# <rows> <cols>'"))?;
    let mut it = header.split_whitespace();
    let rows = parse_usize(it.next(), start, "row count")?;
    let cols = parse_usize(it.next(), start, "column count")?;
    if it.next().is_some() {
        return Err(parse_err(start, "trailing tokens in header"));
    }
    let mut m = BinaryMatrix::zeros(rows, cols);
    for (off, line) in lines[1..].iter().enumerate() {
        let ln = start + 1 + off;
        let mut it = line.split_whitespace();
        let i = parse_usize(it.next(), ln, "row index")?;
        let j = parse_usize(it.next(), ln, "column index")?;
        if it.next().is_some() {
            return Err(parse_err(ln, "expected two indices"));
        }
        if i >= rows || j >= cols {
            return Err(parse_err(ln, format!("({i}, {j}) outside {rows}x{cols}")));
        }
        if m.get(i, j) {
            return Err(parse_err(ln, format!("duplicate entry ({i}, {j})")));
        }
        m.set(i, j, true);
    }
    Ok(m)
}

fn parse_pbm(text: &str) -> Result<Vec<BinaryMatrix>> {
    // Character stream with comments stripped and line numbers tracked.
    let mut chars = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        chars.extend(body.chars().map(|c| (c, idx + 1)));
        chars.push(('\n', idx + 1));
    }
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].0.is_whitespace() {
            *pos += 1;
        }
    };
    let token = |pos: &mut usize| -> Option<(String, usize)> {
        skip_ws(pos);
        let line = chars.get(*pos)?.1;
        let mut s = String::new();
        while *pos < chars.len() && !chars[*pos].0.is_whitespace() {
            s.push(chars[*pos].0);
            *pos += 1;
        }
        Some((s, line))
    };
    let mut out = Vec::new();
    while let Some((magic, line)) = token(&mut pos) {
        if magic != "P1" {
            return Err(parse_err(line, format!("expected P1, found {magic:?}")));
        }
        let width = token(&mut pos).map(|t| t.0);
        let width = parse_usize(width.as_deref(), line, "width")?;
        let height = token(&mut pos).map(|t| t.0);
        let height = parse_usize(height.as_deref(), line, "height")?;
        let mut m = BinaryMatrix::zeros(height, width);
        for idx in 0..width * height {
            skip_ws(&mut pos);
            match chars.get(pos) {
                Some(('0', _)) => {}
                Some(('1', _)) => m.set(idx / width, idx % width, true),
                Some((c, l)) => return Err(parse_err(*l, format!("unexpected character {c:?}"))),
                None => return Err(parse_err(line, "truncated raster")),
            }
            pos += 1;
        }
        out.push(m);
    }
    Ok(out)
}

fn parse_json(text: &str) -> Result<Vec<BinaryMatrix>> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    let records: Vec<JsonMatrix> = if value.is_array() {
        serde_json::from_value(value)
    } else {
        serde_json::from_value(value).map(|r| vec![r])
    }
    .map_err(|e| parse_err(1, e.to_string()))?;
    records.iter().map(JsonMatrix::to_matrix).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructive::circulant;

    #[test]
    fn dense_layout() {
        let m = circulant(4, 2).unwrap();
        assert_eq!(render(&m, OutputFormat::Dense), "1100\n0110\n0011\n1001\n");
    }

    #[test]
    fn pbm_layout() {
        let m = BinaryMatrix::from_rows([[true, false, true], [false, true, false]]).unwrap();
        assert_eq!(render(&m, OutputFormat::Pbm), "P1\n3 2\n1 0 1\n0 1 0\n");
    }

    #[test]
    fn coords_layout() {
        let m = BinaryMatrix::identity(2);
        assert_eq!(render(&m, OutputFormat::Coords), "# 2 2\n0 0\n1 1\n");
        let z = BinaryMatrix::zeros(2, 3);
        assert_eq!(
            parse_one(&render(&z, OutputFormat::Coords), OutputFormat::Coords).unwrap(),
            z
        );
    }

    #[test]
    fn json_layout() {
        let m = BinaryMatrix::identity(2);
        let s = render_entries(
            &[Entry {
                matrix: &m,
                seed: Some(7),
            }],
            OutputFormat::Json,
        );
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["rows"], serde_json::json!(["10", "01"]));
        assert_eq!(
            (v["a"].as_u64(), v["b"].as_u64(), v["seed"].as_u64()),
            (Some(1), Some(1), Some(7))
        );
    }

    #[test]
    fn multi_record_round_trip() {
        let ms = [
            circulant(3, 1).unwrap(),
            BinaryMatrix::zeros(2, 5),
            BinaryMatrix::ones(1, 1),
        ];
        let entries: Vec<Entry> = ms
            .iter()
            .map(|m| Entry {
                matrix: m,
                seed: None,
            })
            .collect();
        for f in OutputFormat::ALL {
            let text = render_entries(&entries, f);
            assert_eq!(parse(&text, f).unwrap(), ms.to_vec(), "{}", f.name());
        }
    }

    #[test]
    fn pbm_accepts_comments_and_packed_digits() {
        let text = "P1\n# a comment\n3 2\n101\n010\n";
        let m = parse_one(text, OutputFormat::Pbm).unwrap();
        assert_eq!(m.to_string(), "101\n010");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse("10\n1", OutputFormat::Dense),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse("12\n", OutputFormat::Dense).is_err());
        assert!(parse("", OutputFormat::Dense).is_err());
        assert!(parse("0 0\n", OutputFormat::Coords).is_err());
        assert!(parse("# 2 2\n2 0\n", OutputFormat::Coords).is_err());
        assert!(parse("# 2 2\n0 0\n0 0\n", OutputFormat::Coords).is_err());
        assert!(parse("P1\n2 2\n1 0 1\n", OutputFormat::Pbm).is_err());
        assert!(parse("P4\n", OutputFormat::Pbm).is_err());
        assert!(parse("{\"m\":1}", OutputFormat::Json).is_err());
        assert!(parse(
            r#"{"m":1,"n":2,"a":null,"b":null,"seed":null,"rows":["1"]}"#,
            OutputFormat::Json
        )
        .is_err());
    }

    #[test]
    fn format_names() {
        for f in OutputFormat::ALL {
            assert_eq!(f.name().parse::<OutputFormat>().unwrap(), f);
        }
        assert!("png".parse::<OutputFormat>().is_err());
    }
}
