//! Batch CLI over the library: JSON documents in, JSON reports out.
//! Exit codes: 0 success, 1 check failed, 2 input error, 3 inconclusive
//! at the given bound.

use std::io::Read;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use tsalg::action::{restrict_action, AlgebraAction};
use tsalg::error::Error;
use tsalg::field::PrimeField;
use tsalg::fixtures::{report_json, run_fixture, FIXTURE_NAMES};
use tsalg::galois::{point_stabilizers, search_chr, verify_chr};
use tsalg::group::{sylow_subgroup, CrossSection, Subgroup};
use tsalg::induction::{tensor_induce, TupleAlgebra};
use tsalg::modules::{
    algebra_socle, fixed_points, higman_witness, hom_space, is_projective_module, is_simple,
    KGModule,
};
use tsalg::poly::parse_poly;
use tsalg::spec_io::{schema_text, ModuleDocument, SpecDocument};
use tsalg::trace::{
    invariant_basis, is_trace_surjective, rel_trace, subalgebra_contains, trace_full,
    PointStatus,
};

#[derive(Parser)]
#[command(name = "tsalg", about = "group actions on polynomial algebras, exactly")]
struct Cli {
    /// Worker threads for parallel enumeration (0 = default pool)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArg {
    /// Path to an action document, or - for stdin
    spec: String,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an action document
    Validate(SpecArg),
    /// Full trace of a polynomial
    Trace {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        poly: String,
    },
    /// Relative trace over the document's subgroup
    RelTrace {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        poly: String,
    },
    /// Search for an element of trace one
    FindPoint {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        /// Search the full group directly instead of reducing to a Sylow subgroup
        #[arg(long)]
        no_sylow: bool,
    },
    /// Report whether the trace map is surjective
    CheckTs {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        #[arg(long)]
        no_sylow: bool,
    },
    /// Basis of the invariants in one degree
    Invariants {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        degree: u32,
    },
    /// Subalgebra membership for a target polynomial
    Member {
        #[command(flatten)]
        spec: SpecArg,
        /// JSON file with a list of generator polynomial strings
        #[arg(long)]
        gens: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 4)]
        cap: u32,
    },
    /// Induce the subgroup action of the document up to the full group
    Induce {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, value_parser = ["tensor", "product"])]
        mode: String,
    },
    /// Restrict the action to the document's subgroup
    Restrict(SpecArg),
    /// Search for a separability witness
    ChrSearch {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        y_degree: u32,
        #[arg(long)]
        x_degree: u32,
        /// "sylow" to test over a Sylow subgroup instead of the full group
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Stabilizer orders of all rational points up to an extension level
    Stabilizers {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 1)]
        ext_level: u32,
    },
    /// Socle generators of the graded slices of an action
    Socle {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        max_degree: u32,
        /// Module documents for the simple modules, one path each
        #[arg(long, required = true, num_args = 1..)]
        simples: Vec<String>,
    },
    /// Operations on module documents
    Module {
        #[command(subcommand)]
        op: ModuleOp,
    },
    /// Run a named check suite
    Fixture {
        /// Fixture name, or "list" to print the registry
        name: String,
    },
    /// Print the accepted document shapes
    Schema,
}

#[derive(Subcommand)]
enum ModuleOp {
    /// Basis of the vectors fixed by a subgroup (default: the full group)
    FixedPoints {
        module: String,
        /// Comma-separated element indices
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Basis of the space of module maps from one module to another
    Hom { source: String, target: String },
    /// Exhaustive simplicity check
    Simple { module: String },
    /// Projectivity via an exactly solved witness system
    Projective { module: String },
    /// Relative projectivity witness over a subgroup
    Higman {
        module: String,
        #[arg(long)]
        subgroup: Option<String>,
    },
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load_action(path: &str) -> Result<(AlgebraAction, Option<Subgroup>), Error> {
    SpecDocument::parse(&read_input(path)?)?.build()
}

fn load_module(path: &str) -> Result<KGModule, Error> {
    ModuleDocument::parse(&read_input(path)?)?.build()
}

fn parse_subgroup(m: &KGModule, arg: &Option<String>) -> Result<Subgroup, Error> {
    match arg {
        None => Ok(Subgroup::full(m.group().clone())),
        Some(text) => {
            let elems = text
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Error::Invalid(format!("bad subgroup list: {}", e)))?;
            Subgroup::new(m.group().clone(), elems)
        }
    }
}

fn require_subgroup(sub: Option<Subgroup>) -> Result<Subgroup, Error> {
    sub.ok_or(Error::Invalid(
        "this command needs a \"subgroup\" field in the document".into(),
    ))
}

fn emit(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn point_exit(status: &PointStatus) -> ExitCode {
    match status {
        PointStatus::Found => ExitCode::from(0),
        PointStatus::NoneGradedExact => ExitCode::from(1),
        PointStatus::InconclusiveAtBound => ExitCode::from(3),
    }
}

fn status_name(status: &PointStatus) -> &'static str {
    match status {
        PointStatus::Found => "found",
        PointStatus::NoneGradedExact => "none-graded-exact",
        PointStatus::InconclusiveAtBound => "inconclusive-at-bound",
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Validate(arg) => {
            let (a, sub) = load_action(&arg.spec)?;
            emit(&json!({
                "valid": true,
                "p": a.field().p(),
                "group_order": a.group().order(),
                "variables": a.vars(),
                "graded": a.is_graded(),
                "filtration_preserving": a.is_filtration_preserving(),
                "subgroup_order": sub.map(|s| s.order()),
            }));
            Ok(ExitCode::from(0))
        }
        Command::Trace { spec, poly } => {
            let (a, _) = load_action(&spec.spec)?;
            let f = parse_poly(&poly, a.vars(), a.field())?;
            let t = trace_full(&a, &f)?;
            emit(&json!({ "trace": t.render(a.vars()) }));
            Ok(ExitCode::from(0))
        }
        Command::RelTrace { spec, poly } => {
            let (a, sub) = load_action(&spec.spec)?;
            let h = require_subgroup(sub)?;
            let y = Subgroup::full(a.group().clone());
            let f = parse_poly(&poly, a.vars(), a.field())?;
            let t = rel_trace(&a, &h, &y, &f)?;
            emit(&json!({ "relative_trace": t.render(a.vars()) }));
            Ok(ExitCode::from(0))
        }
        Command::FindPoint {
            spec,
            max_degree,
            no_sylow,
        } => {
            let (a, _) = load_action(&spec.spec)?;
            let r = is_trace_surjective(&a, max_degree, !no_sylow)?;
            emit(&json!({
                "status": status_name(&r.status),
                "bound": r.bound,
                "witness": r.witness.map(|w| w.render(a.vars())),
            }));
            Ok(point_exit(&r.status))
        }
        Command::CheckTs {
            spec,
            max_degree,
            no_sylow,
        } => {
            let (a, _) = load_action(&spec.spec)?;
            let r = is_trace_surjective(&a, max_degree, !no_sylow)?;
            emit(&json!({
                "trace_surjective": matches!(r.status, PointStatus::Found),
                "status": status_name(&r.status),
                "bound": r.bound,
            }));
            Ok(point_exit(&r.status))
        }
        Command::Invariants { spec, degree } => {
            let (a, _) = load_action(&spec.spec)?;
            let basis = invariant_basis(&a, degree)?;
            emit(&json!({
                "degree": degree,
                "dimension": basis.len(),
                "basis": basis.iter().map(|f| f.render(a.vars())).collect::<Vec<_>>(),
            }));
            Ok(ExitCode::from(0))
        }
        Command::Member {
            spec,
            gens,
            target,
            cap,
        } => {
            let (a, _) = load_action(&spec.spec)?;
            let gen_strings: Vec<String> = serde_json::from_str(&read_input(&gens)?)?;
            let gen_polys = gen_strings
                .iter()
                .map(|s| parse_poly(s, a.vars(), a.field()))
                .collect::<Result<Vec<_>, _>>()?;
            let t = parse_poly(&target, a.vars(), a.field())?;
            let contained = subalgebra_contains(&gen_polys, &t, cap)?;
            emit(&json!({ "contains": contained, "cap": cap }));
            Ok(ExitCode::from(if contained { 0 } else { 1 }))
        }
        Command::Induce { spec, mode } => {
            let doc = SpecDocument::parse(&read_input(&spec.spec)?)?;
            let field = PrimeField::new(doc.p)?;
            let parent = tsalg::spec_io::build_group(&doc.group)?;
            let h = Subgroup::new(
                parent.clone(),
                doc.subgroup.clone().ok_or(Error::Invalid(
                    "induce needs a \"subgroup\" field".into(),
                ))?,
            )?;
            let (local, _) = h.to_group_table()?;
            let images = doc
                .action_by_generator
                .iter()
                .map(|per_var| {
                    per_var
                        .iter()
                        .map(|s| parse_poly(s, &doc.variables, field))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let base = Arc::new(AlgebraAction::make_action(
                field,
                doc.variables.clone(),
                local,
                &images,
            )?);
            let cs = CrossSection::greedy(h);
            match mode.as_str() {
                "tensor" => {
                    let ind = tensor_induce(&base, &cs)?;
                    let out = SpecDocument::from_action(&ind, None);
                    print!("{}", out.to_json());
                }
                _ => {
                    let tuples = TupleAlgebra::new(base.clone(), cs.clone())?;
                    let base_doc = SpecDocument::from_action(&base, None);
                    emit(&json!({
                        "components": tuples.components(),
                        "cross_section": cs.reps(),
                        "base": serde_json::from_str::<serde_json::Value>(&base_doc.to_json())?,
                    }));
                }
            }
            Ok(ExitCode::from(0))
        }
        Command::Restrict(arg) => {
            let (a, sub) = load_action(&arg.spec)?;
            let h = require_subgroup(sub)?;
            let (res, _) = restrict_action(&a, &h)?;
            let out = SpecDocument::from_action(&res, None);
            print!("{}", out.to_json());
            Ok(ExitCode::from(0))
        }
        Command::ChrSearch {
            spec,
            y_degree,
            x_degree,
            subgroup,
        } => {
            let (a, _) = load_action(&spec.spec)?;
            let h = match subgroup.as_deref() {
                Some("sylow") => sylow_subgroup(a.group(), a.field().p())?,
                Some(other) => {
                    return Err(Error::Invalid(format!(
                        "unknown subgroup selector: {}",
                        other
                    )))
                }
                None => Subgroup::full(a.group().clone()),
            };
            match search_chr(&a, &h, y_degree, x_degree)? {
                Some(w) => {
                    let verified = verify_chr(&a, &h, &w.pairs)?;
                    emit(&json!({
                        "status": "found",
                        "verified": verified,
                        "pairs": w.pairs.iter().map(|(x, y)| {
                            json!([x.render(a.vars()), y.render(a.vars())])
                        }).collect::<Vec<_>>(),
                    }));
                    Ok(ExitCode::from(if verified { 0 } else { 1 }))
                }
                None => {
                    emit(&json!({
                        "status": "none-at-bound",
                        "y_degree": y_degree,
                        "x_degree": x_degree,
                    }));
                    Ok(ExitCode::from(3))
                }
            }
        }
        Command::Stabilizers { spec, ext_level } => {
            let (a, _) = load_action(&spec.spec)?;
            let report = point_stabilizers(&a, ext_level)?;
            emit(&serde_json::to_value(&report)?);
            Ok(ExitCode::from(0))
        }
        Command::Socle {
            spec,
            max_degree,
            simples,
        } => {
            let (a, _) = load_action(&spec.spec)?;
            let modules = simples
                .iter()
                .map(|p| load_module(p))
                .collect::<Result<Vec<_>, _>>()?;
            let soc = algebra_socle(&a, max_degree, &modules)?;
            emit(&json!({
                "by_degree": soc.iter().map(|polys| {
                    polys.iter().map(|f| f.render(a.vars())).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
            }));
            Ok(ExitCode::from(0))
        }
        Command::Module { op } => run_module_op(op),
        Command::Fixture { name } => {
            if name == "list" {
                emit(&json!({ "fixtures": FIXTURE_NAMES }));
                return Ok(ExitCode::from(0));
            }
            let report = run_fixture(&name)?;
            print!("{}", report_json(&report));
            Ok(ExitCode::from(if report.passed { 0 } else { 1 }))
        }
        Command::Schema => {
            println!("{}", schema_text());
            Ok(ExitCode::from(0))
        }
    }
}

fn run_module_op(op: ModuleOp) -> Result<ExitCode, Error> {
    match op {
        ModuleOp::FixedPoints { module, subgroup } => {
            let m = load_module(&module)?;
            let h = parse_subgroup(&m, &subgroup)?;
            let basis = fixed_points(&m, &h)?;
            emit(&json!({ "dimension": basis.len(), "basis": basis }));
            Ok(ExitCode::from(0))
        }
        ModuleOp::Hom { source, target } => {
            let m = load_module(&source)?;
            let n = load_module(&target)?;
            let basis = hom_space(&m, &n)?;
            emit(&json!({
                "dimension": basis.len(),
                "basis": basis.iter().map(|x| x.to_rows()).collect::<Vec<_>>(),
            }));
            Ok(ExitCode::from(0))
        }
        ModuleOp::Simple { module } => {
            let m = load_module(&module)?;
            let simple = is_simple(&m)?;
            emit(&json!({ "simple": simple }));
            Ok(ExitCode::from(if simple { 0 } else { 1 }))
        }
        ModuleOp::Projective { module } => {
            let m = load_module(&module)?;
            let projective = is_projective_module(&m)?;
            emit(&json!({ "projective": projective }));
            Ok(ExitCode::from(if projective { 0 } else { 1 }))
        }
        ModuleOp::Higman { module, subgroup } => {
            let m = load_module(&module)?;
            let h = parse_subgroup(&m, &subgroup)?;
            match higman_witness(&m, &h)? {
                Some(w) => {
                    emit(&json!({ "witness": w.to_rows() }));
                    Ok(ExitCode::from(0))
                }
                None => {
                    emit(&json!({ "witness": serde_json::Value::Null }));
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
