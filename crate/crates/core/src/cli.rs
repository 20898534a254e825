//! Command-line surface: matrix documents, analysis commands and exports.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::census::census;
use crate::error::{Error, Result};
use crate::exactlin::{FieldElement, Gf2, Matrix, Rational};
use crate::ground::Transversal;
use crate::index::{crosscheck_quadratic, index_relative, verify_index_well_defined};
use crate::matroid::{check_maximality, LagrangianMatroid};
use crate::orient::{are_isomorphic, enumerate_orientations, extend_signs, SignTable};
use crate::polytope::{orient_skeleton, skeleton, to_dot, to_json, EdgeKind};
use crate::represent::{relative_signs, representation_table, Representation};
use crate::selftest::{run_all, DEFAULT_SEED};

#[derive(Debug, Parser)]
#[command(
    name = "lagmat",
    version,
    about = "Exact computations on Lagrangian matroids and their orientations"
)]
pub struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,

    /// Seed for the randomized checks of `selftest`.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the bases, or the independent admissible sets of size `--rank`.
    Bases {
        file: PathBuf,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Validate the representation and the maximality property.
    Check { file: PathBuf },
    /// Signs of every basis relative to a fundamental basis.
    Signs {
        file: PathBuf,
        #[arg(long)]
        fundamental: String,
        /// Also print the full two-argument table.
        #[arg(long)]
        full: bool,
    },
    /// Enumerate all orientations of the matroid.
    Orientations(Source),
    /// Index relative to a fundamental basis.
    Index {
        file: PathBuf,
        #[arg(long)]
        fundamental: String,
        /// Enumerate every height-increasing path and compare counts.
        #[arg(long)]
        verify_paths: bool,
    },
    /// Compare the matroid index with the quadratic-form index for every
    /// fundamental basis.
    Crosscheck { file: PathBuf },
    /// Export the polytope skeleton.
    Polytope {
        file: PathBuf,
        /// Direct the short edges by the representation's sign table.
        #[arg(long)]
        oriented: bool,
        /// Fundamental basis for the vertex signs (default: first basis).
        #[arg(long, requires = "oriented")]
        fundamental: Option<String>,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Search for a signed permutation carrying one matroid onto another.
    Isomorphic {
        first: PathBuf,
        second: PathBuf,
        /// Require the sign tables to correspond as well.
        #[arg(long)]
        oriented: bool,
    },
    /// Exhaustive census of all Lagrangian matroids on `n` pairs.
    Census {
        #[arg(long)]
        n: usize,
    },
    /// Run the acceptance checks.
    Selftest,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Matrix document.
    pub file: Option<PathBuf>,
    /// Whitespace-separated bases, e.g. "1*23 12*3 123* 123".
    #[arg(long)]
    pub bases: Option<String>,
}

/// Numbered lines of one block, split into tokens.
type Rows<'a> = Vec<(usize, Vec<&'a str>)>;

/// A parsed matrix file.
#[derive(Clone, Debug)]
pub enum MatrixDocument {
    Rational(Representation<Rational>),
    Gf2(Representation<Gf2>),
}

fn parse_token<T: TokenValue>(tok: &str, line: usize, field: &str) -> Result<T> {
    T::from_token(tok).ok_or_else(|| Error::Parse(format!("line {line}: `{tok}` is not an element of {field}")))
}

pub trait TokenValue: Sized {
    fn from_token(tok: &str) -> Option<Self>;
}

impl TokenValue for Rational {
    fn from_token(tok: &str) -> Option<Self> {
        let (num, den) = tok.split_once('/').unwrap_or((tok, "1"));
        let num: num_bigint::BigInt = num.parse().ok()?;
        let den: num_bigint::BigInt = den.parse().ok()?;
        (den != num_bigint::BigInt::from(0)).then(|| Rational::new(num, den))
    }
}

impl TokenValue for Gf2 {
    fn from_token(tok: &str) -> Option<Self> {
        match tok {
            "0" => Some(Gf2(false)),
            "1" => Some(Gf2(true)),
            _ => None,
        }
    }
}

fn build<T: FieldElement + TokenValue>(
    n: usize,
    left: &[(usize, Vec<&str>)],
    right: Option<&[(usize, Vec<&str>)]>,
    field: &str,
) -> Result<Representation<T>> {
    let block = |rows: &[(usize, Vec<&str>)]| -> Result<Matrix<T>> {
        let parsed = rows
            .iter()
            .map(|(line, toks)| toks.iter().map(|t| parse_token::<T>(t, *line, field)).collect())
            .collect::<Result<Vec<Vec<T>>>>()?;
        Matrix::from_rows(parsed)
    };
    let l = block(left)?;
    let r = match right {
        Some(rows) => block(rows)?,
        None => Matrix::identity(n),
    };
    Representation::new(l, r)
}

impl MatrixDocument {
    /// Format: `field Q|GF2`, `n <int>`, `left` and `n` rows, then an
    /// optional `right` block (identity by default). `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let mut header = |key: &str| -> Result<(usize, String)> {
            let (no, line) = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing `{key}` line")))?;
            match line.split_whitespace().collect::<Vec<_>>()[..] {
                [k, v] if k == key => Ok((no, v.to_string())),
                _ => Err(Error::Parse(format!(
                    "line {no}: expected `{key} <value>`, found `{line}`"
                ))),
            }
        };
        let (_, field) = header("field")?;
        let (n_line, n) = header("n")?;
        let n: usize = n
            .parse()
            .map_err(|_| Error::Parse(format!("line {n_line}: `{n}` is not a size")))?;
        if n == 0 {
            return Err(Error::Parse(format!("line {n_line}: n must be positive")));
        }
        let rest: Vec<(usize, &str)> = lines.collect();
        let mut blocks: Vec<(&str, Rows)> = Vec::new();
        for (no, line) in rest {
            match line {
                "left" | "right" => {
                    if blocks.iter().any(|(name, _)| *name == line) {
                        return Err(Error::Parse(format!("line {no}: duplicate `{line}` block")));
                    }
                    if line == "right" && blocks.is_empty() {
                        return Err(Error::Parse(format!("line {no}: `right` before `left`")));
                    }
                    blocks.push((line, Vec::new()));
                }
                _ => {
                    let Some((_, rows)) = blocks.last_mut() else {
                        return Err(Error::Parse(format!("line {no}: expected `left`, found `{line}`")));
                    };
                    let toks: Vec<&str> = line.split_whitespace().collect();
                    if toks.len() != n {
                        return Err(Error::Parse(format!(
                            "line {no}: expected {n} entries, found {}",
                            toks.len()
                        )));
                    }
                    rows.push((no, toks));
                }
            }
        }
        let Some((_, left)) = blocks.first() else {
            return Err(Error::Parse("missing `left` block".into()));
        };
        for (name, rows) in &blocks {
            if rows.len() != n {
                return Err(Error::Parse(format!(
                    "`{name}` block has {} rows, expected {n}",
                    rows.len()
                )));
            }
        }
        let right = blocks.get(1).map(|(_, rows)| rows.as_slice());
        match field.as_str() {
            "Q" => Ok(MatrixDocument::Rational(build(n, left, right, "Q")?)),
            "GF2" => Ok(MatrixDocument::Gf2(build(n, left, right, "GF(2)")?)),
            other => Err(Error::Parse(format!("unknown field `{other}` (expected Q or GF2)"))),
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn field(&self) -> &'static str {
        match self {
            MatrixDocument::Rational(_) => Rational::NAME,
            MatrixDocument::Gf2(_) => Gf2::NAME,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            MatrixDocument::Rational(r) => r.n(),
            MatrixDocument::Gf2(r) => r.n(),
        }
    }

    pub fn matroid(&self) -> Result<LagrangianMatroid> {
        match self {
            MatrixDocument::Rational(r) => r.matroid(),
            MatrixDocument::Gf2(r) => r.matroid(),
        }
    }

    pub fn bases(&self, k: usize) -> Result<Vec<String>> {
        Ok(match self {
            MatrixDocument::Rational(r) => r.extract_bases(k)?.labels(),
            MatrixDocument::Gf2(r) => r.extract_bases(k)?.labels(),
        })
    }

    /// Sign computations need an ordered field.
    pub fn rational(&self) -> Result<&Representation<Rational>> {
        match self {
            MatrixDocument::Rational(r) => Ok(r),
            MatrixDocument::Gf2(_) => Err(Error::UnsupportedField("GF(2)")),
        }
    }
}

/// Result of one command: JSON document, human rendering and exit status.
#[derive(Clone, Debug)]
pub struct Output {
    pub json: Value,
    pub text: String,
    pub status: i32,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output { json, text, status: 0 }
    }

    fn raw(text: String) -> Self {
        Output {
            json: Value::String(text.clone()),
            text,
            status: 0,
        }
    }

    pub fn render(&self, pretty: bool) -> String {
        if pretty {
            return self.text.clone();
        }
        match &self.json {
            Value::String(s) => s.clone(),
            v => format!("{v}\n"),
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn fundamental(m: &LagrangianMatroid, label: &str) -> Result<Transversal> {
    let f = Transversal::parse(label, m.n())?;
    m.require_basis(&f)?;
    Ok(f)
}

fn sign_char(s: i8) -> char {
    match s {
        1 => '+',
        -1 => '-',
        _ => '.',
    }
}

fn table_text(st: &SignTable) -> String {
    let mut out = String::new();
    let width = st.bases().iter().map(|b| b.label().len()).max().unwrap_or(0);
    let _ = write!(out, "{:width$}", "");
    for b in st.bases() {
        let _ = write!(out, " {b:>width$}");
    }
    out.push('\n');
    for g in st.bases() {
        let _ = write!(out, "{g:width$}");
        for a in st.bases() {
            let _ = write!(out, " {:>width$}", sign_char(st.get(g, a)));
        }
        out.push('\n');
    }
    out
}

fn table_json(st: &SignTable) -> Value {
    to_value(&st.rows())
}

fn bases_cmd(file: &Path, rank: Option<usize>) -> Result<Output> {
    let doc = MatrixDocument::read(file)?;
    let k = rank.unwrap_or(doc.n());
    let bases = doc.bases(k)?;
    let text = bases.join("\n") + "\n";
    Ok(Output::new(to_value(&bases), text))
}

fn check_cmd(file: &Path) -> Result<Output> {
    let doc = MatrixDocument::read(file)?;
    let system = match &doc {
        MatrixDocument::Rational(r) => r.extract_bases(r.n())?,
        MatrixDocument::Gf2(r) => r.extract_bases(r.n())?,
    };
    let report = check_maximality(&system)?;
    let even = crate::matroid::is_even(&system)?;
    let json = json!({
        "field": doc.field(),
        "n": doc.n(),
        "symmetric": true,
        "rank": doc.n(),
        "bases": system.len(),
        "maximality": report.holds,
        "witness": report.witness.as_ref().map(|w| w.label()),
        "even": even,
    });
    let mut text = format!(
        "field {}\nn {}\nL·Rᵗ symmetric, rank {}\n{} bases\nmaximality {}\neven {even}\n",
        doc.field(),
        doc.n(),
        doc.n(),
        system.len(),
        if report.holds { "holds" } else { "fails" }
    );
    if let Some(w) = &report.witness {
        let _ = writeln!(text, "witness ordering {}", w.label());
    }
    let mut out = Output::new(json, text);
    if !report.holds {
        out.status = 1;
    }
    Ok(out)
}

fn signs_cmd(file: &Path, label: &str, full: bool) -> Result<Output> {
    let doc = MatrixDocument::read(file)?;
    let r = doc.rational()?;
    let m = r.matroid()?;
    let f = fundamental(&m, label)?;
    let rs = relative_signs(r, &m, &f)?;
    let mut json = to_value(&rs);
    let mut text = format!("relative to {f}\n");
    for (b, s) in rs.signs() {
        let _ = writeln!(text, "{b} {}", sign_char(s.value()));
    }
    if full {
        let st = extend_signs(&m, &rs)?;
        json["table"] = table_json(&st);
        text.push('\n');
        text.push_str(&table_text(&st));
    }
    Ok(Output::new(json, text))
}

fn orientations_cmd(source: &Source) -> Result<Output> {
    let m = match (&source.file, &source.bases) {
        (Some(file), _) => MatrixDocument::read(file)?.matroid()?,
        (None, Some(list)) => LagrangianMatroid::parse(list)?,
        (None, None) => return Err(Error::Parse("give a matrix file or --bases".into())),
    };
    let tables = enumerate_orientations(&m)?;
    let f = m.first_basis();
    let rows = tables.iter().map(|st| st.row(&f)).collect::<Result<Vec<_>>>()?;
    let json = json!({
        "bases": m.labels(),
        "count": tables.len(),
        "orientations": rows.iter().zip(&tables).map(|(rs, st)| json!({
            "fundamental": rs.fundamental(),
            "signs": to_value(&rs.signs()),
            "table": table_json(st),
        })).collect::<Vec<_>>(),
    });
    let mut text = format!("{} orientation(s) of {{{}}}\n", tables.len(), m.labels().join(", "));
    for (i, st) in tables.iter().enumerate() {
        let _ = writeln!(text, "\n#{}", i + 1);
        text.push_str(&table_text(st));
    }
    Ok(Output::new(json, text))
}

fn index_cmd(file: &Path, label: &str, verify: bool) -> Result<Output> {
    let doc = MatrixDocument::read(file)?;
    let r = doc.rational()?;
    let m = r.matroid()?;
    let f = fundamental(&m, label)?;
    let st = representation_table(r, &m)?;
    let sk = skeleton(&m)?;
    let report = index_relative(&sk, &st, &f)?;
    let mut json = to_value(&report);
    let path: Vec<String> = report
        .path
        .vertices
        .iter()
        .zip(&report.signs)
        .map(|(v, s)| format!("{v}({})", sign_char(*s)))
        .collect();
    let mut text = format!(
        "index {} relative to {f}, max height {}\npath {}\n",
        report.index,
        report.max_height,
        path.join(" -> ")
    );
    if verify {
        let census = verify_index_well_defined(&sk, &st, &f)?;
        let _ = writeln!(
            text,
            "{} complete paths, {} stalled, sign-change counts {:?}",
            census.paths, census.stalled, census.counts
        );
        json["paths"] = to_value(&census);
    }
    Ok(Output::new(json, text))
}

fn crosscheck_cmd(file: &Path) -> Result<Output> {
    let doc = MatrixDocument::read(file)?;
    let r = doc.rational()?;
    let m = r.matroid()?;
    let sk = skeleton(&m)?;
    let rows = m
        .bases()
        .iter()
        .map(|f| crosscheck_quadratic(r, &sk, f))
        .collect::<Result<Vec<_>>>()?;
    let agree = rows.iter().all(|c| c.agree);
    let json = json!({ "agree": agree, "fundamentals": to_value(&rows) });
    let mut text = String::from("fundamental matroid kronecker oracle height rank signature\n");
    for c in &rows {
        let _ = writeln!(
            text,
            "{} {} {} {} {} {} {}{}",
            c.fundamental,
            c.matroid_index,
            c.kronecker_index,
            c.oracle_index,
            c.max_height,
            c.rank,
            c.signature,
            if c.agree { "" } else { " MISMATCH" }
        );
    }
    let mut out = Output::new(json, text);
    if !agree {
        out.status = 1;
    }
    Ok(out)
}

fn polytope_cmd(file: &Path, oriented: bool, label: Option<&str>, dot: bool) -> Result<Output> {
    let doc = MatrixDocument::read(file)?;
    let m = doc.matroid()?;
    let sk = skeleton(&m)?;
    let directed = if oriented {
        let r = doc.rational()?;
        let st = representation_table(r, &m)?;
        let f = match label {
            Some(l) => fundamental(&m, l)?,
            None => m.first_basis(),
        };
        Some((orient_skeleton(&m, &st)?, st.row(&f)?))
    } else {
        None
    };
    if dot {
        return Ok(Output::raw(to_dot(&sk, directed.as_ref().map(|(os, _)| os))));
    }
    let json = to_json(&sk, directed.as_ref().map(|(os, rs)| (os, rs)));
    let (short, long) = sk.edge_counts();
    let mut text = format!(
        "{} vertices, {short} short and {long} long edges\n",
        sk.vertices().len()
    );
    for e in sk.edges() {
        let kind = if e.kind == EdgeKind::Short { "short" } else { "long" };
        match directed.as_ref().and_then(|(os, _)| os.direction_of(e)) {
            Some((x, y)) => writeln!(text, "{x} -> {y} {kind}"),
            None => writeln!(text, "{} -- {} {kind}", e.a, e.b),
        }
        .expect("write to string");
    }
    for face in sk.faces() {
        let members: Vec<String> = face.members.iter().map(Transversal::label).collect();
        let _ = writeln!(text, "{} {}", face.kind.name(), members.join(" "));
    }
    Ok(Output::new(json, text))
}

fn isomorphic_cmd(a: &Path, b: &Path, oriented: bool) -> Result<Output> {
    let (da, db) = (MatrixDocument::read(a)?, MatrixDocument::read(b)?);
    let (ma, mb) = (da.matroid()?, db.matroid()?);
    let witness = if oriented {
        let ta = representation_table(da.rational()?, &ma)?;
        let tb = representation_table(db.rational()?, &mb)?;
        are_isomorphic(&ma, Some(&ta), &mb, Some(&tb))?
    } else {
        are_isomorphic(&ma, None, &mb, None)?
    };
    let label = witness.as_ref().map(|w| w.label());
    let json = json!({ "isomorphic": witness.is_some(), "oriented": oriented, "witness": label });
    let text = match label {
        Some(w) => format!("isomorphic via {w}\n"),
        None => "not isomorphic\n".to_string(),
    };
    Ok(Output::new(json, text))
}

fn census_cmd(n: usize) -> Result<Output> {
    let report = census(n)?;
    let mut text = format!(
        "n {}\ncollections {}\nmatroids {} ({} even)\norientations {} ({} matroids unorientable)\n",
        report.n, report.collections, report.matroids, report.even_matroids, report.orientations, report.unorientable
    );
    for (k, c) in &report.orientations_per_matroid {
        let _ = writeln!(text, "  {c} matroids with {k} orientation(s)");
    }
    let _ = writeln!(text, "edges {} short, {} long", report.short_edges, report.long_edges);
    for (kind, c) in &report.faces {
        let _ = writeln!(text, "  {kind} {c}");
    }
    Ok(Output::new(to_value(&report), text))
}

fn selftest_cmd(seed: u64) -> Result<Output> {
    let results = run_all(seed);
    let failed = results.iter().filter(|r| !r.passed).count();
    let text = results.iter().map(|r| r.line() + "\n").collect::<String>()
        + &format!("{} passed, {failed} failed\n", results.len() - failed);
    let json =
        json!({ "seed": seed, "passed": results.len() - failed, "failed": failed, "criteria": to_value(&results) });
    let mut out = Output::new(json, text);
    out.status = i32::from(failed > 0);
    Ok(out)
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Bases { file, rank } => bases_cmd(file, *rank),
        Command::Check { file } => check_cmd(file),
        Command::Signs {
            file,
            fundamental,
            full,
        } => signs_cmd(file, fundamental, *full),
        Command::Orientations(source) => orientations_cmd(source),
        Command::Index {
            file,
            fundamental,
            verify_paths,
        } => index_cmd(file, fundamental, *verify_paths),
        Command::Crosscheck { file } => crosscheck_cmd(file),
        Command::Polytope {
            file,
            oriented,
            fundamental,
            dot,
            json: _,
        } => polytope_cmd(file, *oriented, fundamental.as_deref(), *dot),
        Command::Isomorphic {
            first,
            second,
            oriented,
        } => isomorphic_cmd(first, second, *oriented),
        Command::Census { n } => census_cmd(*n),
        Command::Selftest => selftest_cmd(cli.seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documents() {
        let doc = MatrixDocument::parse("# fig\nfield Q\nn 2\nleft\n1/2 3 # row\n3 -4/6\n").unwrap();
        assert_eq!(doc.field(), "Q");
        let r = doc.rational().unwrap();
        assert_eq!(r.left().get(0, 0), &Rational::new(1.into(), 2.into()));
        assert_eq!(r.left().get(1, 1), &Rational::new((-2).into(), 3.into()));
        assert_eq!(r.right(), &Matrix::identity(2));

        let gf = MatrixDocument::parse("field GF2\nn 2\nleft\n0 1\n1 0\nright\n1 0\n0 1\n").unwrap();
        assert_eq!(gf.field(), "GF2");
        assert!(matches!(gf.rational(), Err(Error::UnsupportedField(_))));
    }

    #[test]
    fn rejects_malformed_documents() {
        let cases = [
            "",
            "field R\nn 1\nleft\n1\n",
            "field Q\nn x\nleft\n1\n",
            "field Q\nn 2\nleft\n1 2\n",
            "field Q\nn 1\nleft\n1/0\n",
            "field GF2\nn 1\nleft\n2\n",
            "field Q\nn 1\n1\n",
            "field Q\nn 1\nleft\n1\nleft\n1\n",
            "field Q\nn 2\nleft\n1 2 3\n4 5 6\n",
        ];
        for text in cases {
            assert!(matches!(MatrixDocument::parse(text), Err(Error::Parse(_))), "{text:?}");
        }
        assert!(matches!(
            MatrixDocument::parse("field Q\nn 2\nleft\n0 1\n2 0\n"),
            Err(Error::NotSymmetric(_))
        ));
    }
}
