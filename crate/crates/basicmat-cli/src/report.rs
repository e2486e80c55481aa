//! Machine-parseable report formats.
//!
//! One record per line, `#` starts a comment. The `text` format separates
//! fields with spaces and prints magnitudes below `eps_struct` as exact 0;
//! `tsv` separates with tabs and never snaps values. Every float is
//! printed with 17 significant digits so reports round-trip losslessly.
//! Complex matrix rows are flattened as alternating `re im` fields.

use basicmat::{cx, ComplexMatrix, StructureReport};
use num_complex::Complex64;

use crate::matfile::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Tsv,
}

/// Line-oriented writer: fields joined by the format separator.
pub struct Sink {
    format: Format,
    eps: f64,
    out: String,
}

impl Sink {
    pub fn new(format: Format, eps: f64) -> Self {
        Self {
            format,
            eps,
            out: String::new(),
        }
    }

    pub fn finish(self) -> String {
        self.out
    }

    pub fn comment(&mut self, text: &str) {
        self.out.push_str("# ");
        self.out.push_str(text);
        self.out.push('\n');
    }

    pub fn line(&mut self, fields: &[String]) {
        let sep = match self.format {
            Format::Text => " ",
            Format::Tsv => "\t",
        };
        self.out.push_str(&fields.join(sep));
        self.out.push('\n');
    }

    pub fn num(&self, x: f64) -> String {
        if self.format == Format::Text && x.abs() < self.eps {
            "0".to_string()
        } else {
            format!("{x:.16e}")
        }
    }

    pub fn raw_num(&self, x: f64) -> String {
        format!("{x:.16e}")
    }

    pub fn matrix_rows(&mut self, prefix: &[String], m: &ComplexMatrix) {
        for i in 0..m.rows() {
            let mut fields = prefix.to_vec();
            fields.push("row".into());
            fields.push(i.to_string());
            for j in 0..m.cols() {
                let e = m.get(i, j);
                fields.push(self.num(e.re));
                fields.push(self.num(e.im));
            }
            self.line(&fields);
        }
    }

    pub fn flags(&mut self, r: &StructureReport) {
        let b = |v: bool| if v { "1".to_string() } else { "0".to_string() };
        self.line(&[
            "flags".into(),
            "normal".into(),
            b(r.normal),
            "hermitian".into(),
            b(r.hermitian),
            "unitary".into(),
            b(r.unitary),
            "symmetric_unitary".into(),
            b(r.symmetric_unitary),
            "idempotent".into(),
            b(r.idempotent),
        ]);
    }
}

/// A factor as read back from a report.
#[derive(Debug, Clone)]
pub struct ParsedFactor {
    pub alpha: Complex64,
    pub rank: usize,
    pub matrix: ComplexMatrix,
}

#[derive(Debug, Clone)]
pub struct ParsedRoot {
    pub branch_indices: Vec<u32>,
    pub residual_index: u32,
    pub matrix: ComplexMatrix,
    pub pow_residual: f64,
}

#[derive(Debug, Clone)]
pub enum Payload {
    Factorization {
        factors: Vec<ParsedFactor>,
        residual_rank: usize,
        residual: ComplexMatrix,
        recon_residual: f64,
    },
    IdemDecomposition {
        parts: Vec<(usize, ComplexMatrix)>,
        recon_residual: f64,
    },
    Roots {
        degree: u32,
        roots: Vec<ParsedRoot>,
    },
    Density {
        weights: Vec<(f64, usize)>,
        blocks: Vec<Vec<(usize, ComplexMatrix)>>,
        kernel: ComplexMatrix,
        recon_residual: f64,
    },
}

#[derive(Debug, Clone)]
pub struct Report {
    pub size: usize,
    pub eps_struct: f64,
    pub eps_cluster: f64,
    pub input: ComplexMatrix,
    pub payload: Payload,
}

// ------------------------------------------------------------------
// parsing

struct Cursor<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
            .filter(|(_, toks)| !toks.is_empty() && !toks[0].starts_with('#'))
            .collect();
        Self { lines, pos: 0 }
    }

    fn bad(&self) -> ParseError {
        let line = self
            .lines
            .get(self.pos.min(self.lines.len().saturating_sub(1)))
            .map(|(n, _)| *n)
            .unwrap_or(1);
        ParseError::BadToken { line, col: 1 }
    }

    fn next(&mut self) -> Result<&(usize, Vec<&'a str>), ParseError> {
        let item = self.lines.get(self.pos).ok_or(ParseError::BadHeader {
            line: self.lines.last().map(|(n, _)| *n).unwrap_or(1),
            col: 1,
        })?;
        self.pos += 1;
        Ok(item)
    }

    /// Consume a line that must start with `tags`; returns the rest.
    fn expect(&mut self, tags: &[&str]) -> Result<Vec<&'a str>, ParseError> {
        let err = self.bad();
        let (_, toks) = self.next()?;
        if toks.len() < tags.len() || &toks[..tags.len()] != tags {
            return Err(err);
        }
        Ok(toks[tags.len()..].to_vec())
    }

    fn parse_f64(&self, s: &str) -> Result<f64, ParseError> {
        s.parse::<f64>().map_err(|_| self.bad())
    }

    fn parse_usize(&self, s: &str) -> Result<usize, ParseError> {
        s.parse::<usize>().map_err(|_| self.bad())
    }

    /// Read `rows` matrix lines prefixed by `prefix`, with `cols` complex
    /// entries flattened as re/im pairs.
    fn matrix(
        &mut self,
        prefix: &[&str],
        rows: usize,
        cols: usize,
    ) -> Result<ComplexMatrix, ParseError> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            let mut want = prefix.to_vec();
            want.push("row");
            let rest = self.expect(&want)?;
            if rest.len() != 1 + 2 * cols || self.parse_usize(rest[0])? != i {
                return Err(self.bad());
            }
            for j in 0..cols {
                let re = self.parse_f64(rest[1 + 2 * j])?;
                let im = self.parse_f64(rest[2 + 2 * j])?;
                entries.push(cx(re, im));
            }
        }
        ComplexMatrix::new(rows, cols, entries).map_err(|_| self.bad())
    }
}

/// Parse any report this crate emits (factorization, idem-decomposition,
/// roots, density).
pub fn parse_report(text: &str) -> Result<Report, ParseError> {
    let mut cur = Cursor::new(text);
    let kind = cur.expect(&["report"])?;
    let kind = *kind.first().ok_or(cur.bad())?;
    let size_fields = cur.expect(&["size"])?;
    let size = cur.parse_usize(size_fields.first().ok_or(cur.bad())?)?;
    // cap keeps a corrupt header from driving huge allocations
    if size == 0 || size > 8192 {
        return Err(cur.bad());
    }
    let tol_fields = cur.expect(&["tols"])?;
    if tol_fields.len() != 2 {
        return Err(cur.bad());
    }
    let eps_struct = cur.parse_f64(tol_fields[0])?;
    let eps_cluster = cur.parse_f64(tol_fields[1])?;
    let _flags = cur.expect(&["flags"])?;
    let degree = if kind == "roots" {
        let d = cur.expect(&["degree"])?;
        Some(
            d.first()
                .ok_or(cur.bad())
                .and_then(|s| s.parse::<u32>().map_err(|_| cur.bad()))?,
        )
    } else {
        None
    };
    let input = cur.matrix(&["input"], size, size)?;

    let payload = match kind {
        "factorization" => parse_factorization(&mut cur, size)?,
        "idem-decomposition" => parse_idem(&mut cur, size)?,
        "roots" => {
            let degree = degree.ok_or_else(|| cur.bad())?;
            parse_roots(&mut cur, size, degree)?
        }
        "density" => parse_density(&mut cur, size)?,
        _ => return Err(cur.bad()),
    };
    Ok(Report {
        size,
        eps_struct,
        eps_cluster,
        input,
        payload,
    })
}

fn parse_factorization(cur: &mut Cursor<'_>, size: usize) -> Result<Payload, ParseError> {
    let count_fields = cur.expect(&["factor_count"])?;
    let count = cur.parse_usize(count_fields.first().ok_or(cur.bad())?)?;
    let mut factors = Vec::with_capacity(count);
    for j in 0..count {
        let head = cur.expect(&["factor", &j.to_string(), "alpha"])?;
        // re im modulus <m> argument <a> rank <r>
        if head.len() != 8 || head[2] != "modulus" || head[4] != "argument" || head[6] != "rank" {
            return Err(cur.bad());
        }
        let alpha = cx(cur.parse_f64(head[0])?, cur.parse_f64(head[1])?);
        let rank = cur.parse_usize(head[7])?;
        let matrix = cur.matrix(&["factor", &j.to_string()], size, size)?;
        factors.push(ParsedFactor {
            alpha,
            rank,
            matrix,
        });
    }
    let res_fields = cur.expect(&["residual", "rank"])?;
    let residual_rank = cur.parse_usize(res_fields.first().ok_or(cur.bad())?)?;
    let residual = cur.matrix(&["residual"], size, size)?;
    let rr = cur.expect(&["recon_residual"])?;
    let recon_residual = cur.parse_f64(rr.first().ok_or(cur.bad())?)?;
    Ok(Payload::Factorization {
        factors,
        residual_rank,
        residual,
        recon_residual,
    })
}

fn parse_idem(cur: &mut Cursor<'_>, size: usize) -> Result<Payload, ParseError> {
    let count_fields = cur.expect(&["part_count"])?;
    let count = cur.parse_usize(count_fields.first().ok_or(cur.bad())?)?;
    let mut parts = Vec::with_capacity(count);
    for j in 0..count {
        let st_fields = cur.expect(&["part", &j.to_string(), "st"])?;
        let st = cur.parse_usize(st_fields.first().ok_or(cur.bad())?)?;
        let matrix = cur.matrix(&["part", &j.to_string()], size, size)?;
        parts.push((st, matrix));
    }
    let rr = cur.expect(&["recon_residual"])?;
    let recon_residual = cur.parse_f64(rr.first().ok_or(cur.bad())?)?;
    Ok(Payload::IdemDecomposition {
        parts,
        recon_residual,
    })
}

fn parse_roots(cur: &mut Cursor<'_>, size: usize, degree: u32) -> Result<Payload, ParseError> {
    let count_fields = cur.expect(&["root_count"])?;
    let count = cur.parse_usize(count_fields.first().ok_or(cur.bad())?)?;
    let mut roots = Vec::with_capacity(count);
    for j in 0..count {
        let sel = cur.expect(&["root", &j.to_string(), "selector"])?;
        // branch indices then `residual <r>`
        let split = sel
            .iter()
            .position(|&t| t == "residual")
            .ok_or(cur.bad())?;
        if split + 2 != sel.len() {
            return Err(cur.bad());
        }
        let mut branch_indices = Vec::with_capacity(split);
        for t in &sel[..split] {
            branch_indices.push(t.parse::<u32>().map_err(|_| cur.bad())?);
        }
        let residual_index = sel[split + 1].parse::<u32>().map_err(|_| cur.bad())?;
        let matrix = cur.matrix(&["root", &j.to_string()], size, size)?;
        let pr = cur.expect(&["root", &j.to_string(), "pow_residual"])?;
        let pow_residual = cur.parse_f64(pr.first().ok_or(cur.bad())?)?;
        roots.push(ParsedRoot {
            branch_indices,
            residual_index,
            matrix,
            pow_residual,
        });
    }
    Ok(Payload::Roots { degree, roots })
}

fn parse_density(cur: &mut Cursor<'_>, size: usize) -> Result<Payload, ParseError> {
    let count_fields = cur.expect(&["weight_count"])?;
    let count = cur.parse_usize(count_fields.first().ok_or(cur.bad())?)?;
    let mut weights = Vec::with_capacity(count);
    let mut blocks = Vec::with_capacity(count);
    for j in 0..count {
        let w = cur.expect(&["weight", &j.to_string(), "value"])?;
        if w.len() != 3 || w[1] != "rank" {
            return Err(cur.bad());
        }
        let value = cur.parse_f64(w[0])?;
        let rank = cur.parse_usize(w[2])?;
        weights.push((value, rank));
        let mut block = Vec::with_capacity(rank);
        for l in 0..rank {
            let st_fields = cur.expect(&["block", &j.to_string(), "part", &l.to_string(), "st"])?;
            let st = cur.parse_usize(st_fields.first().ok_or(cur.bad())?)?;
            let matrix = cur.matrix(&["block", &j.to_string(), "part", &l.to_string()], size, size)?;
            block.push((st, matrix));
        }
        blocks.push(block);
    }
    let k = cur.expect(&["kernel", "rank"])?;
    let _kernel_rank = cur.parse_usize(k.first().ok_or(cur.bad())?)?;
    let kernel = cur.matrix(&["kernel"], size, size)?;
    let rr = cur.expect(&["recon_residual"])?;
    let recon_residual = cur.parse_f64(rr.first().ok_or(cur.bad())?)?;
    Ok(Payload::Density {
        weights,
        blocks,
        kernel,
        recon_residual,
    })
}
