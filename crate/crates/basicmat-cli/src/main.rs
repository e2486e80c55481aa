//! Command-line front end: parse matrices from files, run the library
//! operations, and print factorizations, roots, and diagnostics in a
//! stable text format.
//!
//! Exit codes: 0 success, 1 I/O or parse failure, 2 validation failure
//! (not normal, not idempotent, failed verification, ...).

mod matfile;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use basicmat::{
    all_nth_roots, canonical_density, classify, cx, decompose_pure, factor_normal, gate,
    power, pseudo_inverse, reconstruct, build_from_frame, CanonicalFactorization, ColumnVector,
    ComplexMatrix, DensityMatrix, Frame, GateParams, StructureReport, SymmetricIdempotent,
    ToleranceModel,
};

use matfile::{parse_complex, parse_matrix, tokenize, ParseError};
use report::{parse_report, Format, Payload, Report, Sink};

#[derive(Parser)]
#[command(name = "basicmat", version, about = "Basic-matrix factorization toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Tsv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Tsv => Format::Tsv,
        }
    }
}

#[derive(Args)]
struct Opts {
    /// Input file
    #[arg(long)]
    input: PathBuf,
    /// Structural residual tolerance
    #[arg(long, default_value_t = 1e-10)]
    tol_struct: f64,
    /// Eigenvalue clustering tolerance
    #[arg(long, default_value_t = 1e-7)]
    tol_cluster: f64,
    /// Report format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Command {
    /// Print structure flags and residual norms for a matrix
    Classify {
        #[command(flatten)]
        opts: Opts,
    },
    /// Factor a normal matrix into basic matrices
    Factor {
        #[command(flatten)]
        opts: Opts,
    },
    /// Moore-Penrose pseudo-inverse via the factorization
    Pinv {
        #[command(flatten)]
        opts: Opts,
    },
    /// Raise a normal matrix to an integer power through its factorization
    Power {
        #[command(flatten)]
        opts: Opts,
        /// Exponent
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    /// Enumerate every n-th root of a normal matrix
    Roots {
        #[command(flatten)]
        opts: Opts,
        /// Root degree
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Cap on the number of roots materialized
        #[arg(long, default_value_t = 4096)]
        max_roots: u64,
    },
    /// Split a symmetric idempotent into its unique st-ordered rank-1 parts
    IdemDecompose {
        #[command(flatten)]
        opts: Opts,
    },
    /// Canonical form of a density matrix
    Density {
        #[command(flatten)]
        opts: Opts,
    },
    /// Emit a catalog gate and its published factorization
    Gate {
        /// Gate name (hadamard, pauli_x, pauli_y, pauli_z, phase, not,
        /// sqrt_not, swap, sqrt_swap, cnot, bell, rotation)
        #[arg(long)]
        gate: String,
        /// Angle parameter for phase and rotation gates
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tol_struct: f64,
        #[arg(long, default_value_t = 1e-7)]
        tol_cluster: f64,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Build a factorization from a frame file of orthonormal vectors
    BuildFrame {
        #[command(flatten)]
        opts: Opts,
    },
    /// Re-check reconstruction and Moore-Penrose residuals of a report
    Verify {
        /// Report file produced by factor, gate, power, build-frame,
        /// idem-decompose, roots, or density
        #[arg(long)]
        input: PathBuf,
    },
}

enum CliError {
    Io(String),
    Parse(ParseError),
    Validation(basicmat::Error),
    VerifyFailed,
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<basicmat::Error> for CliError {
    fn from(e: basicmat::Error) -> Self {
        CliError::Validation(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Parse(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Validation(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CliError::VerifyFailed) => ExitCode::from(2),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn tolerances(tol_struct: f64, tol_cluster: f64) -> Result<ToleranceModel, CliError> {
    Ok(ToleranceModel::new(tol_struct, tol_cluster)?)
}

fn load_matrix(opts: &Opts) -> Result<(ComplexMatrix, ToleranceModel, Format), CliError> {
    let text = read_file(&opts.input)?;
    let matrix = parse_matrix(&text)?;
    let tol = tolerances(opts.tol_struct, opts.tol_cluster)?;
    Ok((matrix, tol, opts.format.into()))
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Classify { opts } => {
            let (a, tol, format) = load_matrix(&opts)?;
            print!("{}", render_classify(&a, &tol, format)?);
            Ok(())
        }
        Command::Factor { opts } => {
            let (a, tol, format) = load_matrix(&opts)?;
            let f = factor_normal(&a, &tol)?;
            print!("{}", render_factorization(&a, &f, &tol, format));
            Ok(())
        }
        Command::Pinv { opts } => {
            let (a, tol, format) = load_matrix(&opts)?;
            let f = factor_normal(&a, &tol)?;
            let pinv = pseudo_inverse(&f);
            print!("{}", render_pinv(&a, &pinv, f.class_hint(), &tol, format));
            Ok(())
        }
        Command::Power { opts, m } => {
            let (a, tol, format) = load_matrix(&opts)?;
            let f = factor_normal(&a, &tol)?;
            let powered = power(&f, m, &tol)?;
            let direct = matrix_pow(&a, m);
            print!("{}", render_factorization(&direct, &powered, &tol, format));
            Ok(())
        }
        Command::Roots { opts, n, max_roots } => {
            let (a, tol, format) = load_matrix(&opts)?;
            let f = factor_normal(&a, &tol)?;
            let roots = all_nth_roots(&f, n, max_roots as u128, &tol)?;
            print!("{}", render_roots(&a, &f, n, &roots, &tol, format));
            Ok(())
        }
        Command::IdemDecompose { opts } => {
            let (a, tol, format) = load_matrix(&opts)?;
            let e = SymmetricIdempotent::new(a.clone(), &tol)?;
            let d = decompose_pure(&e, &tol)?;
            print!("{}", render_idem(&a, &d, &tol, format)?);
            Ok(())
        }
        Command::Density { opts } => {
            let (a, tol, format) = load_matrix(&opts)?;
            let rho = DensityMatrix::new(a.clone(), &tol)?;
            let form = canonical_density(&rho, &tol)?;
            print!("{}", render_density(&a, &form, &tol, format)?);
            Ok(())
        }
        Command::Gate {
            gate: name,
            theta,
            tol_struct,
            tol_cluster,
            format,
        } => {
            let tol = tolerances(tol_struct, tol_cluster)?;
            let mut params = GateParams::new();
            if let Some(t) = theta {
                params = params.with("theta", t);
            }
            let spec = gate(&name, &params, &tol)?;
            print!(
                "{}",
                render_factorization(&spec.matrix, &spec.published_factorization, &tol, format.into())
            );
            Ok(())
        }
        Command::BuildFrame { opts } => {
            let (frame, dim, tol, format) = load_frame(&opts)?;
            let f = build_from_frame(&frame, dim, &tol)?;
            let built = reconstruct(&f);
            print!("{}", render_factorization(&built, &f, &tol, format));
            Ok(())
        }
        Command::Verify { input } => {
            let text = read_file(&input)?;
            let rep = parse_report(&text)?;
            let ok = verify_report(&rep);
            if ok {
                Ok(())
            } else {
                Err(CliError::VerifyFailed)
            }
        }
    }
}

/// Frame file: header `dim count`, then `count` complex eigenvalues, then
/// a `dim x count` matrix whose columns are the vectors.
fn load_frame(opts: &Opts) -> Result<(Frame, usize, ToleranceModel, Format), CliError> {
    let text = read_file(&opts.input)?;
    let tokens = tokenize(&text);
    if tokens.len() < 2 {
        return Err(ParseError::BadHeader { line: 1, col: 1 }.into());
    }
    let dim: usize = tokens[0].text.parse().map_err(|_| ParseError::BadHeader {
        line: tokens[0].line,
        col: tokens[0].col,
    })?;
    let count: usize = tokens[1].text.parse().map_err(|_| ParseError::BadHeader {
        line: tokens[1].line,
        col: tokens[1].col,
    })?;
    if dim == 0 {
        return Err(ParseError::BadHeader {
            line: tokens[0].line,
            col: tokens[0].col,
        }
        .into());
    }
    let expected = count + dim * count;
    if tokens.len() - 2 != expected {
        return Err(ParseError::CountMismatch {
            expected,
            got: tokens.len() - 2,
        }
        .into());
    }
    let mut alphas = Vec::with_capacity(count);
    for tok in &tokens[2..2 + count] {
        match parse_complex(tok.text) {
            Some(v) => alphas.push(v),
            None => {
                return Err(ParseError::BadToken {
                    line: tok.line,
                    col: tok.col,
                }
                .into())
            }
        }
    }
    let body = &tokens[2 + count..];
    let mut columns: Vec<Vec<Complex64>> = vec![Vec::with_capacity(dim); count];
    for (idx, tok) in body.iter().enumerate() {
        match parse_complex(tok.text) {
            Some(v) => columns[idx % count].push(v),
            None => {
                return Err(ParseError::BadToken {
                    line: tok.line,
                    col: tok.col,
                }
                .into())
            }
        }
    }
    let tol = tolerances(opts.tol_struct, opts.tol_cluster)?;
    let vectors: Result<Vec<ColumnVector>, basicmat::Error> =
        columns.into_iter().map(ColumnVector::new).collect();
    let frame = Frame::new(vectors?, alphas, &tol)?;
    Ok((frame, dim, tol, opts.format.into()))
}

fn matrix_pow(a: &ComplexMatrix, m: u32) -> ComplexMatrix {
    let mut acc = ComplexMatrix::identity(a.rows());
    let mut base = a.clone();
    let mut exp = m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = &acc * &base;
        }
        exp >>= 1;
        if exp > 0 {
            base = &base * &base;
        }
    }
    acc
}

fn principal_argument(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

// ------------------------------------------------------------------
// renderers

fn header(
    sink: &mut Sink,
    kind: &str,
    size: usize,
    tol: &ToleranceModel,
    flags: &StructureReport,
) {
    sink.comment("basicmat report");
    sink.line(&["report".into(), kind.into()]);
    sink.line(&["size".into(), size.to_string()]);
    sink.line(&[
        "tols".into(),
        sink.raw_num(tol.eps_struct),
        sink.raw_num(tol.eps_cluster),
    ]);
    sink.flags(flags);
}

fn render_factorization(
    input: &ComplexMatrix,
    f: &CanonicalFactorization,
    tol: &ToleranceModel,
    format: Format,
) -> String {
    let mut sink = Sink::new(format, tol.eps_struct);
    header(&mut sink, "factorization", f.size(), tol, &f.class_hint());
    sink.matrix_rows(&["input".into()], input);
    sink.line(&["factor_count".into(), f.factors().len().to_string()]);
    for (j, factor) in f.factors().iter().enumerate() {
        let alpha = factor.eigenvalue;
        sink.line(&[
            "factor".into(),
            j.to_string(),
            "alpha".into(),
            sink.num(alpha.re),
            sink.num(alpha.im),
            "modulus".into(),
            sink.num(alpha.norm()),
            "argument".into(),
            sink.num(principal_argument(alpha)),
            "rank".into(),
            factor.rank().to_string(),
        ]);
        sink.matrix_rows(&["factor".into(), j.to_string()], factor.idempotent.matrix());
    }
    sink.line(&[
        "residual".into(),
        "rank".into(),
        f.residual().rank().to_string(),
    ]);
    sink.matrix_rows(&["residual".into()], f.residual().matrix());
    let recon = reconstruct(f).fro_distance(input);
    sink.line(&["recon_residual".into(), sink.raw_num(recon)]);
    sink.finish()
}

fn render_classify(
    a: &ComplexMatrix,
    tol: &ToleranceModel,
    format: Format,
) -> Result<String, CliError> {
    let flags = classify(a, tol)?;
    let n = a.rows();
    let adj = a.adjoint();
    let aa = a * &adj;
    let mut sink = Sink::new(format, tol.eps_struct);
    header(&mut sink, "classify", n, tol, &flags);
    sink.line(&[
        "residual_norm".into(),
        "normal".into(),
        sink.raw_num(aa.fro_distance(&(&adj * a))),
        "hermitian".into(),
        sink.raw_num(a.fro_distance(&adj)),
        "unitary".into(),
        sink.raw_num(aa.fro_distance(&ComplexMatrix::identity(n))),
        "idempotent".into(),
        sink.raw_num((a * a).fro_distance(a)),
    ]);
    Ok(sink.finish())
}

fn render_pinv(
    a: &ComplexMatrix,
    pinv: &ComplexMatrix,
    flags: StructureReport,
    tol: &ToleranceModel,
    format: Format,
) -> String {
    let mut sink = Sink::new(format, tol.eps_struct);
    header(&mut sink, "pinv", a.rows(), tol, &flags);
    sink.matrix_rows(&["input".into()], a);
    sink.matrix_rows(&["pinv".into()], pinv);
    let r = mp_residuals(a, pinv);
    sink.line(&[
        "mp_residual".into(),
        sink.raw_num(r[0]),
        sink.raw_num(r[1]),
        sink.raw_num(r[2]),
        sink.raw_num(r[3]),
    ]);
    sink.finish()
}

fn render_roots(
    input: &ComplexMatrix,
    f: &CanonicalFactorization,
    n: u32,
    roots: &[(basicmat::RootSelector, CanonicalFactorization)],
    tol: &ToleranceModel,
    format: Format,
) -> String {
    let mut sink = Sink::new(format, tol.eps_struct);
    header(&mut sink, "roots", f.size(), tol, &f.class_hint());
    sink.line(&["degree".into(), n.to_string()]);
    sink.matrix_rows(&["input".into()], input);
    sink.line(&["root_count".into(), roots.len().to_string()]);
    for (j, (sel, root)) in roots.iter().enumerate() {
        let mut fields = vec!["root".into(), j.to_string(), "selector".into()];
        fields.extend(sel.branch_indices.iter().map(u32::to_string));
        fields.push("residual".into());
        fields.push(sel.residual_index.to_string());
        sink.line(&fields);
        let matrix = reconstruct(root);
        sink.matrix_rows(&["root".into(), j.to_string()], &matrix);
        let pow_res = matrix_pow(&matrix, n).fro_distance(input);
        sink.line(&[
            "root".into(),
            j.to_string(),
            "pow_residual".into(),
            sink.raw_num(pow_res),
        ]);
    }
    sink.finish()
}

fn render_idem(
    input: &ComplexMatrix,
    d: &basicmat::PureDecomposition,
    tol: &ToleranceModel,
    format: Format,
) -> Result<String, CliError> {
    let flags = classify(input, tol)?;
    let mut sink = Sink::new(format, tol.eps_struct);
    header(&mut sink, "idem-decomposition", input.rows(), tol, &flags);
    sink.matrix_rows(&["input".into()], input);
    sink.line(&["part_count".into(), d.parts.len().to_string()]);
    for (j, (part, st)) in d.parts.iter().zip(&d.st_indices).enumerate() {
        sink.line(&[
            "part".into(),
            j.to_string(),
            "st".into(),
            st.to_string(),
        ]);
        sink.matrix_rows(&["part".into(), j.to_string()], part.matrix());
    }
    let recon = d.sum().fro_distance(input);
    sink.line(&["recon_residual".into(), sink.raw_num(recon)]);
    Ok(sink.finish())
}

fn render_density(
    input: &ComplexMatrix,
    form: &basicmat::DensityCanonicalForm,
    tol: &ToleranceModel,
    format: Format,
) -> Result<String, CliError> {
    let flags = classify(input, tol)?;
    let n = input.rows();
    let mut sink = Sink::new(format, tol.eps_struct);
    header(&mut sink, "density", n, tol, &flags);
    sink.matrix_rows(&["input".into()], input);
    sink.line(&["weight_count".into(), form.weights.len().to_string()]);
    for (j, (w, block)) in form.weights.iter().zip(&form.blocks).enumerate() {
        sink.line(&[
            "weight".into(),
            j.to_string(),
            "value".into(),
            sink.raw_num(*w),
            "rank".into(),
            block.parts.len().to_string(),
        ]);
        for (l, (part, st)) in block.parts.iter().zip(&block.st_indices).enumerate() {
            sink.line(&[
                "block".into(),
                j.to_string(),
                "part".into(),
                l.to_string(),
                "st".into(),
                st.to_string(),
            ]);
            sink.matrix_rows(
                &["block".into(), j.to_string(), "part".into(), l.to_string()],
                part.matrix(),
            );
        }
    }
    sink.line(&[
        "kernel".into(),
        "rank".into(),
        form.residual.rank().to_string(),
    ]);
    sink.matrix_rows(&["kernel".into()], form.residual.matrix());
    let recon = form.reconstruct(n).fro_distance(input);
    sink.line(&["recon_residual".into(), sink.raw_num(recon)]);
    Ok(sink.finish())
}

// ------------------------------------------------------------------
// verify

fn mp_residuals(a: &ComplexMatrix, pinv: &ComplexMatrix) -> [f64; 4] {
    let ax = a * pinv;
    let xa = pinv * a;
    [
        (&ax * a).fro_distance(a),
        (&xa * pinv).fro_distance(pinv),
        ax.fro_distance(&ax.adjoint()),
        xa.fro_distance(&xa.adjoint()),
    ]
}

struct Checker {
    all_ok: bool,
}

impl Checker {
    fn new() -> Self {
        Self { all_ok: true }
    }

    fn check(&mut self, name: &str, residual: f64, bound: f64) {
        let ok = residual <= bound;
        self.all_ok &= ok;
        println!(
            "check {name} {} residual {residual:.3e} bound {bound:.3e}",
            if ok { "PASS" } else { "FAIL" }
        );
    }

    fn check_flag(&mut self, name: &str, ok: bool) {
        self.all_ok &= ok;
        println!("check {name} {}", if ok { "PASS" } else { "FAIL" });
    }
}

/// Reconstruction bound: the reported residual plus slack for entries the
/// text format snapped to zero (each below eps_struct, at most n^2 of
/// them per matrix).
fn recon_bound(reported: f64, n: usize, eps_struct: f64, input_norm: f64) -> f64 {
    2.0 * reported + 100.0 * n as f64 * eps_struct * input_norm.max(1.0)
}

fn verify_report(rep: &Report) -> bool {
    let n = rep.size;
    let eps = rep.eps_struct;
    let input_norm = rep.input.norm_fro();
    let mut checker = Checker::new();

    match &rep.payload {
        Payload::Factorization {
            factors,
            residual_rank,
            residual,
            recon_residual,
        } => {
            println!("verify factorization size {n}");
            let mut recon = residual.clone();
            let mut pinv = residual.clone();
            let mut ranks_ok = residual.trace().re.round() as usize == *residual_rank;
            for f in factors {
                recon = &recon + &f.matrix.scale(f.alpha);
                if f.alpha.norm() > 0.0 {
                    pinv = &pinv + &f.matrix.scale(f.alpha.inv());
                }
                ranks_ok &= f.matrix.trace().re.round() as usize == f.rank;
            }
            checker.check(
                "reconstruction",
                recon.fro_distance(&rep.input),
                recon_bound(*recon_residual, n, eps, input_norm),
            );
            checker.check_flag("ranks_match_traces", ranks_ok);
            let scale = factors
                .iter()
                .map(|f| f.alpha.norm())
                .fold(1.0, f64::max);
            let distinct = factors.iter().enumerate().all(|(i, a)| {
                factors[..i]
                    .iter()
                    .all(|b| (a.alpha - b.alpha).norm() > rep.eps_cluster * scale)
            });
            checker.check_flag("eigenvalues_distinct", distinct);
            let r = mp_residuals(&rep.input, &pinv);
            let mp_bound =
                100.0 * n as f64 * eps * input_norm.max(1.0) * pinv.norm_fro().max(1.0);
            for (name, res) in ["mp_a_x_a", "mp_x_a_x", "mp_ax_hermitian", "mp_xa_hermitian"]
                .iter()
                .zip(r)
            {
                checker.check(name, res, mp_bound);
            }
        }
        Payload::IdemDecomposition {
            parts,
            recon_residual,
        } => {
            println!("verify idem-decomposition size {n}");
            let mut sum = ComplexMatrix::zeros(n, n);
            for (_, m) in parts {
                sum = &sum + m;
            }
            checker.check(
                "reconstruction",
                sum.fro_distance(&rep.input),
                recon_bound(*recon_residual, n, eps, input_norm),
            );
            let monotone = parts.windows(2).all(|w| w[0].0 < w[1].0);
            checker.check_flag("st_strictly_increasing", monotone);
            // a symmetric idempotent is its own pseudo-inverse
            let r = mp_residuals(&rep.input, &sum);
            let mp_bound = 100.0 * n as f64 * eps * input_norm.max(1.0);
            for (name, res) in ["mp_a_x_a", "mp_x_a_x", "mp_ax_hermitian", "mp_xa_hermitian"]
                .iter()
                .zip(r)
            {
                checker.check(name, res, mp_bound);
            }
        }
        Payload::Roots { degree, roots } => {
            println!("verify roots size {n} degree {degree} count {}", roots.len());
            let selectors_ok = roots.iter().all(|r| {
                r.residual_index < *degree && r.branch_indices.iter().all(|&b| b < *degree)
            });
            checker.check_flag("selectors_in_range", selectors_ok);
            for (j, root) in roots.iter().enumerate() {
                let res = matrix_pow(&root.matrix, *degree).fro_distance(&rep.input);
                let bound = (1e-7 * input_norm.max(1.0)).max(2.0 * root.pow_residual);
                checker.check(&format!("root_{j}_power"), res, bound);
            }
        }
        Payload::Density {
            weights,
            blocks,
            kernel,
            recon_residual,
        } => {
            println!("verify density size {n}");
            let mut sum = ComplexMatrix::zeros(n, n);
            let mut projector_sum = kernel.clone();
            let mut weight_rank = 0.0;
            for ((w, _), block) in weights.iter().zip(blocks) {
                weight_rank += w * block.len() as f64;
                for (_, m) in block {
                    sum = &sum + &m.scale(cx(*w, 0.0));
                    projector_sum = &projector_sum + m;
                }
            }
            checker.check(
                "reconstruction",
                sum.fro_distance(&rep.input),
                recon_bound(*recon_residual, n, eps, input_norm),
            );
            checker.check(
                "projectors_complete",
                projector_sum.fro_distance(&ComplexMatrix::identity(n)),
                recon_bound(0.0, n, eps, 1.0),
            );
            checker.check("weight_rank_sum", (weight_rank - 1.0).abs(), 1e-8);
            let descending = weights.windows(2).all(|w| w[0].0 > w[1].0);
            checker.check_flag("weights_strictly_decreasing", descending);
        }
    }
    println!("verify {}", if checker.all_ok { "PASS" } else { "FAIL" });
    checker.all_ok
}
