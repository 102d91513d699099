use std::path::PathBuf;

use clap::{Args, ValueEnum};
use happy_core::io::{parse_instance, parse_multiway_cut, parse_rational, write_instance};
use happy_core::reductions::{
    mhe_to_hardmhv, mhe_to_mhv, mhe_to_softmhv, multiway_cut_to_3mhe, pad_3mhe_to_kmhe,
    verify_reduction, ReductionOutput, ValueMap, Verdict,
};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum From {
    Mwc3,
    Mhe3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum To {
    Mhe3,
    Mhek,
    Mhv,
    Hard,
    Soft,
}

#[derive(Args)]
pub struct ReduceArgs {
    #[arg(long, value_enum)]
    from: From,
    #[arg(long, value_enum)]
    to: To,
    /// Target color count for --to mhek.
    #[arg(long)]
    k: Option<usize>,
    /// Soft threshold for --to soft, as a fraction p/q.
    #[arg(long)]
    rho: Option<String>,
    /// Check the value relation with the brute-force oracles.
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = 1 << 22)]
    budget: u64,
    /// Target instance path (default: <input>.reduced). The value-map
    /// sidecar goes to OUT.map.json.
    #[arg(long)]
    out: Option<PathBuf>,
    file: PathBuf,
}

pub fn run(args: ReduceArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| CliError::contract(format!("{}: {e}", args.file.display())))?;

    let (name, output) = build(&args, &text)?;

    let out_path = args
        .out
        .clone()
        .unwrap_or_else(|| args.file.with_extension("reduced"));
    let target_text = write_instance(
        &output.target.graph,
        &output.target.spec,
        output.target.mode,
    );
    std::fs::write(&out_path, &target_text)
        .map_err(|e| CliError::contract(format!("{}: {e}", out_path.display())))?;

    let sidecar = sidecar_json(name, &output);
    let map_path = PathBuf::from(format!("{}.map.json", out_path.display()));
    std::fs::write(&map_path, format!("{sidecar:#}\n"))
        .map_err(|e| CliError::contract(format!("{}: {e}", map_path.display())))?;
    println!("wrote {}", out_path.display());
    println!("wrote {}", map_path.display());

    if args.verify {
        match verify_reduction(&output, args.budget) {
            Verdict::Holds {
                source_opt,
                target_opt,
            } => println!("verify: holds (source OPT {source_opt}, target OPT {target_opt})"),
            Verdict::Violated {
                source_opt,
                target_opt,
                expected,
            } => {
                println!(
                    "verify: VIOLATED (source OPT {source_opt}, target OPT {target_opt}, value map expected {expected})"
                );
                return Err(CliError::suite("reduction value map violated"));
            }
            Verdict::Skipped { required, budget } => {
                println!("verify: skipped (needs {required} enumerations, budget {budget})")
            }
        }
    }
    Ok(())
}

fn build(args: &ReduceArgs, text: &str) -> Result<(&'static str, ReductionOutput), CliError> {
    match (args.from, args.to) {
        (From::Mwc3, To::Mhe3) => {
            let mc = parse_multiway_cut(text).map_err(|e| CliError::contract(e.to_string()))?;
            let out = multiway_cut_to_3mhe(&mc).map_err(|e| CliError::contract(e.to_string()))?;
            Ok(("multiway-cut-to-3mhe", out))
        }
        (From::Mhe3, to) => {
            let (graph, spec, _) =
                parse_instance(text).map_err(|e| CliError::contract(e.to_string()))?;
            if spec.k() != 3 {
                return Err(CliError::contract(format!(
                    "--from mhe3 requires a 3-color instance, file has k={}",
                    spec.k()
                )));
            }
            match to {
                To::Mhek => {
                    let k = args
                        .k
                        .ok_or_else(|| CliError::contract("--to mhek requires --k"))?;
                    let out = pad_3mhe_to_kmhe(&graph, &spec, k)
                        .map_err(|e| CliError::contract(e.to_string()))?;
                    Ok(("pad-3mhe-to-kmhe", out))
                }
                To::Mhv => {
                    let out = mhe_to_mhv(&graph, &spec)
                        .map_err(|e| CliError::contract(e.to_string()))?;
                    Ok(("mhe-to-mhv", out))
                }
                To::Hard => {
                    let out = mhe_to_hardmhv(&graph, &spec)
                        .map_err(|e| CliError::contract(e.to_string()))?;
                    Ok(("mhe-to-hardmhv", out))
                }
                To::Soft => {
                    let rho_text = args
                        .rho
                        .as_ref()
                        .ok_or_else(|| CliError::contract("--to soft requires --rho p/q"))?;
                    let rho = parse_rational(rho_text)
                        .ok_or_else(|| CliError::contract(format!("invalid --rho '{rho_text}'")))?;
                    let out = mhe_to_softmhv(&graph, &spec, rho)
                        .map_err(|e| CliError::contract(e.to_string()))?;
                    Ok(("mhe-to-softmhv", out))
                }
                To::Mhe3 => Err(CliError::contract("--from mhe3 --to mhe3 is the identity")),
            }
        }
        (From::Mwc3, _) => Err(CliError::contract(
            "--from mwc3 only supports --to mhe3; chain reductions from there",
        )),
    }
}

fn sidecar_json(name: &str, output: &ReductionOutput) -> serde_json::Value {
    let value_map = match output.value_map {
        ValueMap::Affine { a, b } => serde_json::json!({
            "kind": "affine",
            "a": a,
            "b": b,
            "relation": "opt_target = a * opt_source + b",
        }),
        ValueMap::SoftIff {
            delta,
            n,
            m,
            offset,
        } => serde_json::json!({
            "kind": "soft-iff",
            "delta": delta,
            "n": n,
            "m": m,
            "offset": offset,
            "relation": "opt_target = delta * n + (h + 1) * m + opt_source",
        }),
    };
    let mut params = serde_json::Map::new();
    if let Some(k) = output.params.k {
        params.insert("k".into(), k.into());
    }
    if let Some(h) = output.params.h {
        params.insert("h".into(), h.into());
    }
    if let Some(q) = output.params.q {
        params.insert("q".into(), q.into());
    }
    if let Some(delta) = output.params.delta {
        params.insert("delta".into(), delta.into());
    }
    serde_json::json!({
        "reduction": name,
        "value_map": value_map,
        "params": serde_json::Value::Object(params),
        "target": {
            "n": output.target.graph.n(),
            "m": output.target.graph.m(),
            "k": output.target.spec.k(),
            "kind": output.target.kind.to_string(),
        },
    })
}
