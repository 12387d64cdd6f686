//! Command-line front end: document validation, cohomology and centralizer
//! reports, push-outs, the predual isomorphism checks, and the corpus
//! verification driver.
//!
//! Exit codes: 0 success, 1 validation/verification failure, 2 i/o or parse
//! failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use deltac::centralizer::double_centralizer;
use deltac::corpus;
use deltac::derivation::{h1, PushoutContext};
use deltac::docs;
use deltac::duality::dual_iso;
use deltac::error::Error;
use deltac::tensor::{balanced_tensor, is_induced, is_self_induced};
use deltac::verify;

#[derive(Parser)]
#[command(name = "deltac", version, about = "Double centralizers, derivations and H¹ over exact rationals")]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Corpus directory for `verify` (defaults to the bundled corpus)
    #[arg(long, global = true, value_name = "DIR")]
    corpus: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate documents (algebras, envelopes, modules, derivations)
    Check {
        /// JSON documents to validate
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Derivation-space, inner-derivation and cohomology dimensions
    H1 {
        algebra: PathBuf,
        module: PathBuf,
    },
    /// The double-centralizer module of a bimodule
    Centralizer {
        algebra: PathBuf,
        module: PathBuf,
    },
    /// Balanced tensor product of two modules over one algebra
    Tensor {
        algebra: PathBuf,
        x: PathBuf,
        y: PathBuf,
    },
    /// Push a derivation out along an envelope and check the construction
    Pushout {
        envelope: PathBuf,
        module_b: PathBuf,
        derivation: PathBuf,
    },
    /// Predual description of the double centralizer of the dual module
    Dualiso {
        algebra: PathBuf,
        module: PathBuf,
    },
    /// Run the full verification battery over the corpus
    Verify,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code() as u8
        }
    };
    ExitCode::from(code)
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Check { paths } => cmd_check(paths, cli.json),
        Command::H1 { algebra, module } => cmd_h1(algebra, module, cli.json),
        Command::Centralizer { algebra, module } => cmd_centralizer(algebra, module, cli.json),
        Command::Tensor { algebra, x, y } => cmd_tensor(algebra, x, y, cli.json),
        Command::Pushout {
            envelope,
            module_b,
            derivation,
        } => cmd_pushout(envelope, module_b, derivation, cli.json),
        Command::Dualiso { algebra, module } => cmd_dualiso(algebra, module, cli.json),
        Command::Verify => cmd_verify(cli.corpus.as_deref(), cli.json),
    }
}

fn cmd_check(paths: &[PathBuf], json: bool) -> Result<u8, Error> {
    let mut worst = 0u8;
    let mut entries = Vec::new();
    for path in paths {
        match docs::check_document(path) {
            Ok(kind) => {
                if !json {
                    println!("OK    {} ({kind:?})", path.display());
                }
                entries.push(json!({ "path": path.display().to_string(), "ok": true, "kind": format!("{kind:?}") }));
            }
            Err(e) => {
                worst = worst.max(e.exit_code() as u8);
                if !json {
                    println!("ERROR {}: {e}", path.display());
                }
                entries.push(json!({ "path": path.display().to_string(), "ok": false, "error": e.to_string() }));
            }
        }
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&entries)?);
    }
    Ok(worst)
}

fn load_pair(algebra: &Path, module: &Path) -> Result<deltac::Bimodule, Error> {
    let alg = docs::load_algebra(algebra)?;
    let (module_alg, x) = docs::load_bimodule(module)?;
    if *module_alg != *alg {
        return Err(Error::Doc(format!(
            "module {} is over {:?}, not {:?}",
            module.display(),
            module_alg.name(),
            alg.name()
        )));
    }
    Ok(x)
}

fn cmd_h1(algebra: &Path, module: &Path, json: bool) -> Result<u8, Error> {
    let x = load_pair(algebra, module)?;
    let (z1, b1, h1_dim) = h1(&x);
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({ "z1": z1, "b1": b1, "h1": h1_dim }))?
        );
    } else {
        println!("z1 = {z1}");
        println!("b1 = {b1}");
        println!("h1 = {h1_dim}");
    }
    Ok(0)
}

fn cmd_centralizer(algebra: &Path, module: &Path, json: bool) -> Result<u8, Error> {
    let x = load_pair(algebra, module)?;
    let dc = double_centralizer(&x)?;
    let iota_rank = dc.iota().rank();
    let injective = dc.iota().kernel().is_zero();
    let iso = injective && iota_rank == dc.dim();
    let ann = x.ann().dim();
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "dim": dc.dim(),
                "module_dim": x.dim(),
                "ann_dim": ann,
                "iota_rank": iota_rank,
                "iota_injective": injective,
                "iota_isomorphism": iso,
            }))?
        );
    } else {
        println!("dim ΔC(X) = {}", dc.dim());
        println!("dim X     = {}", x.dim());
        println!("dim ann X = {ann}");
        println!("iota: rank {iota_rank}, injective {injective}, isomorphism {iso}");
    }
    Ok(0)
}

fn cmd_tensor(algebra: &Path, x: &Path, y: &Path, json: bool) -> Result<u8, Error> {
    let alg = docs::load_algebra(algebra)?;
    let xm = load_pair(algebra, x)?;
    let ym = load_pair(algebra, y)?;
    let t = balanced_tensor(&xm, &ym)?;
    let (induced, _) = is_induced(&xm)?;
    let self_induced = is_self_induced(&alg)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "dim": t.dim(),
                "raw_dim": t.raw_dim(),
                "x_induced": induced,
                "self_induced": self_induced,
            }))?
        );
    } else {
        println!("dim X⊗Y (balanced) = {} (raw {})", t.dim(), t.raw_dim());
        println!("X induced: {induced}");
        println!("algebra self-induced: {self_induced}");
    }
    Ok(0)
}

fn cmd_pushout(
    envelope: &Path,
    module_b: &Path,
    derivation: &Path,
    json: bool,
) -> Result<u8, Error> {
    let env = docs::load_envelope(envelope)?;
    let (xb_alg, x_b) = docs::load_bimodule(module_b)?;
    if *xb_alg != **env.amb() {
        return Err(Error::Doc(format!(
            "module {} is over {:?}, envelope's ambient algebra is {:?}",
            module_b.display(),
            xb_alg.name(),
            env.amb().name()
        )));
    }
    let (dalg, d) = docs::load_derivation(derivation)?;
    if *dalg != **env.sub() {
        return Err(Error::Doc(format!(
            "derivation {} is over {:?}, envelope's sub-algebra is {:?}",
            derivation.display(),
            dalg.name(),
            env.sub().name()
        )));
    }
    let ctx = PushoutContext::new(&env, &x_b)?;
    let po = ctx.push(&d)?;

    let span_full = env.sub().square_span().is_full();
    let uniqueness = if span_full {
        Some(ctx.unique(&d)?)
    } else {
        None
    };
    let pulled = if span_full {
        ctx.pull_back_inner(&d)?
    } else {
        None
    };

    let names = env.amb().basis_names();
    if json {
        let d_tilde: Vec<_> = (0..env.amb().dim())
            .map(|beta| {
                let pair = po.dc.decode(&po.d_tilde.col(beta));
                json!({
                    "b": names[beta],
                    "S": docs::matrix_to_doc(&pair.s),
                    "T": docs::matrix_to_doc(&pair.t),
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "d_tilde": d_tilde,
                "centralizer_membership": po.membership,
                "derivation_rule": po.derivation_rule,
                "diagram_commutes": po.diagram,
                "unique": uniqueness,
                "pull_back": pulled.as_ref().map(|p| json!({
                    "S": docs::matrix_to_doc(&p.s),
                    "T": docs::matrix_to_doc(&p.t),
                })),
            }))?
        );
    } else {
        #[allow(clippy::needless_range_loop)]
        for beta in 0..env.amb().dim() {
            let pair = po.dc.decode(&po.d_tilde.col(beta));
            println!("D~({}):", names[beta]);
            println!("  S = {:?}", docs::matrix_to_doc(&pair.s));
            println!("  T = {:?}", docs::matrix_to_doc(&pair.t));
        }
        let line = |name: &str, ok: bool| {
            println!("{} {name}", if ok { "PASS" } else { "FAIL" });
        };
        line("centralizer membership", po.membership);
        line("derivation rule over ambient algebra", po.derivation_rule);
        line("diagram commutes", po.diagram);
        match uniqueness {
            Some(u) => line("uniqueness (affine system has one solution)", u),
            None => println!("SKIP uniqueness (products do not span the sub-algebra)"),
        }
        match (&pulled, span_full) {
            (Some(_), _) => println!("PASS pull-back: D = S - T with a centralizer pair"),
            (None, true) => println!("NOTE push-out is not inner; nothing to pull back"),
            (None, false) => {}
        }
    }
    let ok = po.all_ok() && uniqueness.unwrap_or(true);
    Ok(if ok { 0 } else { 1 })
}

fn cmd_dualiso(algebra: &Path, module: &Path, json: bool) -> Result<u8, Error> {
    let x = load_pair(algebra, module)?;
    let iso = dual_iso(&x)?;
    let n_ok = iso.predual.n_inside_ker_mu();
    let factorization = {
        let lhs =
            &iso.predual.quotient.projection.transpose() * &(&iso.theta * iso.dc_star.iota());
        lhs == iso.predual.mu.transpose()
    };
    let injective = iso.dc_star.iota().kernel().is_zero();
    let surjective = iso.predual.mu.rank() == x.dim();
    let induced = is_induced(&x)?.0;
    let induced_iso = if induced {
        let iota = iso.dc_star.iota();
        let bij = iota.kernel().is_zero() && iota.rank() == iso.dc_star.dim();
        let ker_in_n = iso
            .predual
            .mu
            .kernel()
            .basis()
            .iter()
            .all(|v| iso.predual.n_sub.contains(v));
        Some(bij && ker_in_n)
    } else {
        None
    };
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "dc_star_dim": iso.dc_star.dim(),
                "predual_dim": iso.predual.quotient.dim(),
                "n_inside_ker_mu": n_ok,
                "dual_iso": iso.is_isomorphism,
                "factorization": factorization,
                "iota_star_injective": injective,
                "mu_surjective": surjective,
                "induced": induced,
                "induced_dual_iso": induced_iso,
            }))?
        );
    } else {
        let line = |name: &str, ok: bool| {
            println!("{} {name}", if ok { "PASS" } else { "FAIL" });
        };
        println!("dim ΔC(X*) = {}, predual dim = {}", iso.dc_star.dim(), iso.predual.quotient.dim());
        line("N inside ker mu", n_ok);
        line("dual isomorphism via pairing", iso.is_isomorphism);
        line("q* after iota equals mu*", factorization);
        line(
            "iota* injective iff mu surjective",
            injective == surjective,
        );
        match induced_iso {
            Some(ok) => line("induced: iota* bijective and ker mu inside N", ok),
            None => println!("SKIP induced-module identities (module is not induced)"),
        }
    }
    let all = n_ok
        && iso.is_isomorphism
        && factorization
        && (injective == surjective)
        && induced_iso.unwrap_or(true);
    Ok(if all { 0 } else { 1 })
}

fn cmd_verify(corpus_dir: Option<&Path>, json: bool) -> Result<u8, Error> {
    let (corpus, broken, mut warnings) = match corpus_dir {
        None => (corpus::builtin(), Vec::new(), Vec::new()),
        Some(dir) => {
            if !dir.join("manifest.json").exists() {
                let warning = format!("{}: no manifest.json, 0 instances", dir.display());
                (corpus::Corpus::default(), Vec::new(), vec![warning])
            } else {
                let loaded = corpus::load_dir(dir)?;
                (loaded.corpus, loaded.broken, Vec::new())
            }
        }
    };
    let mut report = verify::run(&corpus, &broken);
    warnings.append(&mut report.warnings);
    report.warnings = warnings;
    if json {
        print!("{}", report.render_json());
    } else {
        print!("{}", report.render_text());
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}
