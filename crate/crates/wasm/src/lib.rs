//! Browser bindings: a thin JSON-string façade over the engine so a static
//! page can explore algebras, push derivations out along envelopes, and run
//! the full verification battery. Build with
//! `wasm-pack build crates/wasm --target web`.

use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

use deltac::centralizer::double_centralizer;
use deltac::corpus;
use deltac::derivation::{derivation_space, h1, Derivation, PushoutContext};
use deltac::docs::{matrix_to_doc, AlgebraDoc, BimoduleDoc};
use deltac::duality::dual_iso;
use deltac::error::Error;
use deltac::linalg::map_of_vec;
use deltac::tensor::{is_induced, is_self_induced};
use deltac::{Algebra, Bimodule};
use std::sync::Arc;

fn fail(e: impl std::fmt::Display) -> String {
    json!({ "error": e.to_string() }).to_string()
}

fn resolve_algebra(spec: &str) -> Result<Arc<Algebra>, Error> {
    let spec = spec.trim();
    if let Some(alg) = corpus::builtin_algebra(spec) {
        return Ok(alg);
    }
    let doc: AlgebraDoc = serde_json::from_str(spec)?;
    doc.to_algebra()
}

fn resolve_module(alg: &Arc<Algebra>, spec: &str) -> Result<Bimodule, Error> {
    let spec = spec.trim();
    match spec {
        "regular" => Ok(Bimodule::regular(alg)),
        "dual" => Ok(Bimodule::regular(alg).dual()),
        "outer" => Ok(Bimodule::outer_square(alg)),
        other => {
            if let Some(dim) = other.strip_prefix("zero:") {
                let dim: usize = dim
                    .parse()
                    .map_err(|_| Error::Doc(format!("bad zero-module dimension {dim:?}")))?;
                return Ok(Bimodule::zero_action(alg, dim));
            }
            let doc: BimoduleDoc = serde_json::from_str(other)?;
            doc.to_bimodule(alg.clone())
        }
    }
}

/// The bundled algebras and push-out instances, for populating selectors.
#[wasm_bindgen]
pub fn catalog() -> String {
    let algebras: Vec<_> = corpus::builtin_algebras()
        .into_iter()
        .map(|(name, alg)| {
            json!({
                "name": name,
                "dim": alg.dim(),
                "basis": alg.basis_names(),
                "unital": alg.is_unital(),
                "commutative": alg.is_commutative(),
            })
        })
        .collect();
    let pushouts: Vec<_> = corpus::builtin()
        .pushouts
        .iter()
        .map(|inst| {
            let z1_dim = inst
                .x_b
                .restrict_through(&inst.env)
                .map(|x| derivation_space(&x).dim())
                .unwrap_or(0);
            json!({
                "name": inst.name,
                "sub": inst.env.sub().name(),
                "amb": inst.env.amb().name(),
                "module_dim": inst.x_b.dim(),
                "z1_dim": z1_dim,
            })
        })
        .collect();
    json!({ "algebras": algebras, "pushouts": pushouts }).to_string()
}

/// Full report on one `(algebra, module)` pair: cohomology, the double
/// centralizer, and the predual description of `ΔC(X*)`.
#[wasm_bindgen]
pub fn explore(algebra_spec: &str, module_spec: &str) -> String {
    match explore_impl(algebra_spec, module_spec) {
        Ok(s) => s,
        Err(e) => fail(e),
    }
}

fn explore_impl(algebra_spec: &str, module_spec: &str) -> Result<String, Error> {
    let alg = resolve_algebra(algebra_spec)?;
    let x = resolve_module(&alg, module_spec)?;
    let (z1, b1, h1_dim) = h1(&x);
    let dc = double_centralizer(&x)?;
    let iota_injective = dc.iota().kernel().is_zero();
    let iota_iso = iota_injective && dc.iota().rank() == dc.dim();
    let (induced, _) = is_induced(&x)?;
    let iso = dual_iso(&x)?;
    let factorization = {
        let lhs =
            &iso.predual.quotient.projection.transpose() * &(&iso.theta * iso.dc_star.iota());
        lhs == iso.predual.mu.transpose()
    };
    Ok(json!({
        "algebra": {
            "name": alg.name(),
            "dim": alg.dim(),
            "unital": alg.is_unital(),
            "commutative": alg.is_commutative(),
            "square_span_dim": alg.square_span().dim(),
            "self_induced": is_self_induced(&alg)?,
        },
        "module": {
            "dim": x.dim(),
            "ann_left_dim": x.ann_left().dim(),
            "ann_right_dim": x.ann_right().dim(),
            "ann_dim": x.ann().dim(),
            "induced": induced,
        },
        "h1": { "z1": z1, "b1": b1, "h1": h1_dim },
        "centralizer": {
            "dim": dc.dim(),
            "iota_rank": dc.iota().rank(),
            "iota_injective": iota_injective,
            "iota_isomorphism": iota_iso,
        },
        "predual": {
            "dc_star_dim": iso.dc_star.dim(),
            "quotient_dim": iso.predual.quotient.dim(),
            "n_inside_ker_mu": iso.predual.n_inside_ker_mu(),
            "dual_iso": iso.is_isomorphism,
            "factorization": factorization,
            "iota_star_injective": iso.dc_star.iota().kernel().is_zero(),
            "mu_surjective": iso.predual.mu.rank() == x.dim(),
        },
    })
    .to_string())
}

/// Push one basis derivation of a bundled instance out along its envelope
/// and report the extension together with every check of the construction.
#[wasm_bindgen]
pub fn pushout_demo(instance: &str, derivation_index: usize) -> String {
    match pushout_impl(instance, derivation_index) {
        Ok(s) => s,
        Err(e) => fail(e),
    }
}

fn pushout_impl(instance: &str, derivation_index: usize) -> Result<String, Error> {
    let all = corpus::builtin();
    let inst = all
        .pushouts
        .iter()
        .find(|p| p.name == instance)
        .ok_or_else(|| Error::Doc(format!("unknown push-out instance {instance:?}")))?;
    let ctx = PushoutContext::new(&inst.env, &inst.x_b)?;
    let z1 = derivation_space(&ctx.x);
    if z1.dim() == 0 {
        return Err(Error::Doc(format!("{instance}: no nonzero derivations")));
    }
    let idx = derivation_index.min(z1.dim() - 1);
    let map = map_of_vec(ctx.x.dim(), ctx.x.algebra().dim(), &z1.basis()[idx]);
    let d = Derivation::new(ctx.x.clone(), map)?;
    let po = ctx.push(&d)?;

    let span_full = inst.env.sub().square_span().is_full();
    let unique = if span_full { Some(ctx.unique(&d)?) } else { None };
    let pulled = if span_full {
        ctx.pull_back_inner(&d)?
    } else {
        None
    };
    let names = inst.env.amb().basis_names();
    let d_tilde: Vec<_> = (0..inst.env.amb().dim())
        .map(|beta| {
            let pair = po.dc.decode(&po.d_tilde.col(beta));
            json!({
                "b": names[beta],
                "S": matrix_to_doc(&pair.s),
                "T": matrix_to_doc(&pair.t),
            })
        })
        .collect();
    Ok(json!({
        "instance": instance,
        "sub_basis": inst.env.sub().basis_names(),
        "amb_basis": names,
        "z1_dim": z1.dim(),
        "derivation_index": idx,
        "derivation": matrix_to_doc(d.map()),
        "dc_dim": po.dc.dim(),
        "d_tilde": d_tilde,
        "checks": {
            "centralizer_membership": po.membership,
            "derivation_rule": po.derivation_rule,
            "diagram_commutes": po.diagram,
            "unique": unique,
            "pulled_back": pulled.is_some(),
        },
        "pull_back": pulled.map(|p| json!({
            "S": matrix_to_doc(&p.s),
            "T": matrix_to_doc(&p.t),
        })),
    })
    .to_string())
}

/// Run the whole verification battery over the embedded corpus.
#[wasm_bindgen]
pub fn verify_all() -> String {
    let report = deltac::verify::run(&corpus::builtin(), &[]);
    report.render_json()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_lists_the_bundled_material() {
        let v: serde_json::Value = serde_json::from_str(&catalog()).unwrap();
        assert_eq!(v["algebras"].as_array().unwrap().len(), 8);
        assert!(v["pushouts"].as_array().unwrap().len() >= 5);
    }

    #[test]
    fn explore_m2_regular() {
        let v: serde_json::Value = serde_json::from_str(&explore("m2", "regular")).unwrap();
        assert_eq!(v["h1"]["z1"], 3);
        assert_eq!(v["h1"]["h1"], 0);
        assert_eq!(v["centralizer"]["iota_isomorphism"], true);
        assert_eq!(v["predual"]["dual_iso"], true);
    }

    #[test]
    fn explore_accepts_custom_documents() {
        let custom = r#"{ "name": "c", "dim": 1, "basis": ["e"], "mult": [[["1"]]] }"#;
        let v: serde_json::Value = serde_json::from_str(&explore(custom, "regular")).unwrap();
        assert_eq!(v["h1"]["z1"], 0);
        let v: serde_json::Value = serde_json::from_str(&explore("m2", "zero:2")).unwrap();
        assert_eq!(v["module"]["ann_dim"], 2);
    }

    #[test]
    fn explore_reports_errors_as_json() {
        let v: serde_json::Value = serde_json::from_str(&explore("nope{", "regular")).unwrap();
        assert!(v["error"].is_string());
    }

    #[test]
    fn pushout_demo_on_n3_in_t3() {
        let v: serde_json::Value = serde_json::from_str(&pushout_demo("n3_in_t3", 0)).unwrap();
        assert_eq!(v["checks"]["centralizer_membership"], true);
        assert_eq!(v["checks"]["derivation_rule"], true);
        assert_eq!(v["checks"]["diagram_commutes"], true);
        assert_eq!(v["checks"]["unique"], serde_json::Value::Null);
    }

    #[test]
    fn verify_all_passes() {
        let v: serde_json::Value = serde_json::from_str(&verify_all()).unwrap();
        assert_eq!(v["pass"], true);
    }
}
