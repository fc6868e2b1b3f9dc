//! Command-line front end: load and validate structure files, run the
//! connection and curvature computations, the verification suite, and
//! export the built-in fixtures.
//!
//! Exit codes: 0 ok, 1 check failure, 2 validation or parse error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use acbm_core::classify::{class_membership, lie_class_conditions};
use acbm_core::curvature::{curvature_tensor, ricci, scalar_curv};
use acbm_core::fixtures::{
    abelian_fixture, einstein_instance, fix_c, six_param_family, Mode, PARAM_NAMES,
};
use acbm_core::levicivita::{
    fundamental_f, levi_civita, square_norm_nabla_phi, Connection,
};
use acbm_core::liealg::{LieAlgebraSpec, Vector};
use acbm_core::phikt::{build_d, norm_t, torsion_from_fundamental};
use acbm_core::specfile::{export_spec, parse_spec, specialize};
use acbm_core::structure::StructurePack;
use acbm_core::tensor::Tensor;
use acbm_core::verify::{any_fail, render_machine, render_text, run_suite};
use acbm_core::{Error, Rat};

#[derive(Parser)]
#[command(
    name = "acbm",
    about = "Exact computations for almost contact B-metric structures on Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a structure file and run every validity gate.
    Validate {
        file: PathBuf,
    },
    /// Report basic-class membership (F0, F3, F7, F3+F7).
    Classify {
        /// Substitute parameters, e.g. `l1=1,m1=1/2` (all parameters required).
        #[arg(long)]
        params: Option<String>,
        file: PathBuf,
    },
    /// Print both connections and the torsion of the second one.
    Connection {
        #[arg(long)]
        params: Option<String>,
        file: PathBuf,
    },
    /// Print curvature tensors, Ricci tensors, scalar curvatures and norms.
    Curvature {
        #[arg(long)]
        params: Option<String>,
        file: PathBuf,
    },
    /// Run the full identity-check registry.
    Verify {
        #[arg(long)]
        params: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        file: PathBuf,
    },
    /// Instantiate the built-in six-parameter family and run the pipeline.
    Family {
        /// Substitute `l1..l4,m1,m2`; omitted means fully symbolic.
        #[arg(long)]
        params: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Write a built-in fixture in the structure-file format.
    Export {
        /// One of: six-param-family, abelian, fix-c, einstein.
        fixture: String,
        /// Output path; stdout when omitted.
        path: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Command) -> Result<ExitCode, String> {
    match cmd {
        Command::Validate { file } => {
            let (alg, pack) = load(&file)?;
            validity_gates(&alg, &pack)?;
            println!("ok: dim={}, all validity gates passed", alg.dim());
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { params, file } => {
            let (alg, pack) = load_specialized(&file, params.as_deref())?;
            validity_gates(&alg, &pack)?;
            cmd_classify(&alg, &pack)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Connection { params, file } => {
            let (alg, pack) = load_specialized(&file, params.as_deref())?;
            validity_gates(&alg, &pack)?;
            cmd_connection(&alg, &pack)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Curvature { params, file } => {
            let (alg, pack) = load_specialized(&file, params.as_deref())?;
            validity_gates(&alg, &pack)?;
            cmd_curvature(&alg, &pack)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            params,
            format,
            file,
        } => {
            let (alg, pack) = load_specialized(&file, params.as_deref())?;
            cmd_verify(&alg, &pack, format)
        }
        Command::Family { params, format } => {
            let fx = family_fixture(params.as_deref())?;
            println!("fixture: {}", fx.name);
            cmd_classify(&fx.alg, &fx.pack)?;
            cmd_connection(&fx.alg, &fx.pack)?;
            cmd_curvature(&fx.alg, &fx.pack)?;
            cmd_verify(&fx.alg, &fx.pack, format)
        }
        Command::Export { fixture, path } => {
            let fx = match fixture.as_str() {
                "six-param-family" => {
                    six_param_family(Mode::Symbolic).map_err(|e| e.to_string())?
                }
                "abelian" => abelian_fixture(),
                "fix-c" => fix_c(),
                "einstein" => einstein_instance(),
                other => {
                    return Err(format!(
                        "unknown fixture `{other}` (expected six-param-family, abelian, fix-c or einstein)"
                    ))
                }
            };
            let text = export_spec(&fx.alg, &fx.pack);
            match path {
                Some(p) => std::fs::write(&p, text)
                    .map_err(|e| format!("cannot write {}: {e}", p.display()))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Parse, validate the structure relations and check the Jacobi identity.
fn validity_gates(alg: &LieAlgebraSpec, pack: &StructurePack) -> Result<(), String> {
    let violations = pack.validate();
    if !violations.is_empty() {
        return Err(format!("structure validation failed: {}", violations.join("; ")));
    }
    if let Some(([i, j, k, l], value)) = alg.jacobi_check() {
        return Err(format!(
            "Jacobi identity fails: component {} of the cyclic sum at (E{}, E{}, E{}) is {}",
            l + 1,
            i + 1,
            j + 1,
            k + 1,
            value
        ));
    }
    Ok(())
}

fn load(path: &PathBuf) -> Result<(LieAlgebraSpec, StructurePack), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_spec(&text).map_err(|e| e.to_string())
}

fn load_specialized(
    path: &PathBuf,
    params: Option<&str>,
) -> Result<(LieAlgebraSpec, StructurePack), String> {
    let (alg, pack) = load(path)?;
    match params {
        None => Ok((alg, pack)),
        Some(p) => {
            let map = parse_params(p)?;
            specialize(&alg, &pack, &map).map_err(|e| e.to_string())
        }
    }
}

fn parse_params(text: &str) -> Result<BTreeMap<String, Rat>, String> {
    let mut map = BTreeMap::new();
    for piece in text.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let (name, value) = piece
            .split_once('=')
            .ok_or_else(|| format!("expected `name=value`, got `{piece}`"))?;
        let r = Rat::from_str(value.trim())
            .map_err(|e| format!("bad rational `{}`: {e}", value.trim()))?;
        if map.insert(name.trim().to_string(), r).is_some() {
            return Err(format!("parameter `{}` given twice", name.trim()));
        }
    }
    Ok(map)
}

fn family_fixture(params: Option<&str>) -> Result<acbm_core::fixtures::Fixture, String> {
    let mode = match params {
        None => Mode::Symbolic,
        Some(p) => {
            let map = parse_params(p)?;
            let mut vals: Vec<Rat> = Vec::with_capacity(6);
            for name in PARAM_NAMES {
                let v = map
                    .get(name)
                    .ok_or_else(|| format!("missing parameter `{name}`"))?;
                vals.push(v.clone());
            }
            for key in map.keys() {
                if !PARAM_NAMES.contains(&key.as_str()) {
                    return Err(format!("unknown parameter `{key}`"));
                }
            }
            Mode::At(vals.try_into().unwrap())
        }
    };
    six_param_family(mode).map_err(|e| e.to_string())
}

/// Format a vector as a combination of `e1..eN`.
fn fmt_vector(v: &Vector) -> String {
    let mut parts = Vec::new();
    for (k, c) in v.comps.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let printed = c.to_string();
        let term = if printed == "1" {
            format!("e{}", k + 1)
        } else if printed == "-1" {
            format!("-e{}", k + 1)
        } else if c.as_rat().is_some() {
            format!("{printed}*e{}", k + 1)
        } else {
            format!("({printed})*e{}", k + 1)
        };
        parts.push(term);
    }
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = parts[0].clone();
    for term in &parts[1..] {
        if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(term);
        }
    }
    out
}

fn print_connection_table(label: &str, conn: &Connection) {
    for i in 0..conn.dim() {
        for j in 0..conn.dim() {
            let v = conn.derive_basis(i, j);
            if !v.is_zero() {
                println!("{label}_E{} E{} = {}", i + 1, j + 1, fmt_vector(&v));
            }
        }
    }
}

fn cmd_classify(alg: &LieAlgebraSpec, pack: &StructurePack) -> Result<(), String> {
    let nabla = levi_civita(alg, pack).map_err(|e| e.to_string())?;
    let f = fundamental_f(pack, &nabla);
    let m = class_membership(&f, pack, &nabla);
    let headline = if m.f0 {
        "F0"
    } else if m.f3 && m.f7 {
        "F3+F7 (both components present)"
    } else if m.f3 {
        "F3"
    } else if m.f7 {
        "F7"
    } else if m.f3_plus_f7 {
        "F3+F7"
    } else {
        "outside F3+F7"
    };
    println!("class: {headline}");
    println!(
        "f0={} f3={} f7={} f3_plus_f7={}",
        m.f0, m.f3, m.f7, m.f3_plus_f7
    );
    match lie_class_conditions(alg, pack) {
        Ok(c) => println!(
            "bracket conditions: f3={} f7={} f0={}",
            c.f3, c.f7, c.f0
        ),
        Err(Error::NotNonAbelian) => {
            println!("bracket conditions: not applicable (structure is not non-Abelian)")
        }
        Err(e) => return Err(e.to_string()),
    }
    Ok(())
}

fn pipeline(
    alg: &LieAlgebraSpec,
    pack: &StructurePack,
) -> Result<(Connection, Connection, Tensor), String> {
    let nabla = levi_civita(alg, pack).map_err(|e| e.to_string())?;
    let f = fundamental_f(pack, &nabla);
    let t = torsion_from_fundamental(alg, pack, &nabla, &f).map_err(|e| e.to_string())?;
    let d = build_d(alg, pack, &nabla, &t).map_err(|e| e.to_string())?;
    Ok((nabla, d, t))
}

fn cmd_connection(alg: &LieAlgebraSpec, pack: &StructurePack) -> Result<(), String> {
    let (nabla, d, t) = pipeline(alg, pack)?;
    print_connection_table("nabla", &nabla);
    print_connection_table("D", &d);
    let n = pack.dim();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let v = t.get(&[i, j, k]);
                if !v.is_zero() {
                    println!("T({},{},{}) = {}", i + 1, j + 1, k + 1, v);
                }
            }
        }
    }
    println!("normT2 = {}", norm_t(&t, pack));
    Ok(())
}

fn cmd_curvature(alg: &LieAlgebraSpec, pack: &StructurePack) -> Result<(), String> {
    let (nabla, d, t) = pipeline(alg, pack)?;
    let r = curvature_tensor(alg, &nabla, pack);
    let k4 = curvature_tensor(alg, &d, pack);
    let n = pack.dim();
    let print_curv = |label: &str, t4: &Tensor| {
        for i in 0..n {
            for j in (i + 1)..n {
                for k in i..n {
                    for l in (k + 1)..n {
                        if (k, l) < (i, j) {
                            continue;
                        }
                        let v = t4.get(&[i, j, k, l]);
                        if !v.is_zero() {
                            println!(
                                "{label}({},{},{},{}) = {}",
                                i + 1,
                                j + 1,
                                k + 1,
                                l + 1,
                                v
                            );
                        }
                    }
                }
            }
        }
    };
    print_curv("R", &r);
    print_curv("K", &k4);
    let rho = ricci(&r, pack);
    let rho_d = ricci(&k4, pack);
    for (label, two) in [("rho", &rho), ("rhoD", &rho_d)] {
        for j in 0..n {
            for k in j..n {
                let v = two.get(&[j, k]);
                if !v.is_zero() {
                    println!("{label}({},{}) = {}", j + 1, k + 1, v);
                }
            }
        }
    }
    println!("tau = {}", scalar_curv(&rho, pack));
    println!("tauD = {}", scalar_curv(&rho_d, pack));
    println!("normT2 = {}", norm_t(&t, pack));
    println!("normNablaPhi2 = {}", square_norm_nabla_phi(pack, &nabla));
    Ok(())
}

fn cmd_verify(
    alg: &LieAlgebraSpec,
    pack: &StructurePack,
    format: Format,
) -> Result<ExitCode, String> {
    let results = run_suite(alg, pack).map_err(|e| e.to_string())?;
    match format {
        Format::Text => print!("{}", render_text(&results)),
        Format::Machine => print!("{}", render_machine(&results)),
    }
    if any_fail(&results) {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
