//! The bundled verification corpus: a fixed family of small algebras,
//! modules over them, and envelope/push-out instances, available both as
//! in-memory objects (used by the default `verify` run and the browser demo)
//! and as plain JSON documents (written into `corpus/` so everything can be
//! driven from files).

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use crate::algebra::{Algebra, Envelope};
use crate::bimodule::Bimodule;
use crate::derivation::{derivation_space, Derivation};
use crate::docs::{
    AlgebraDoc, BimoduleDoc, DerivationDoc, DocRef, EnvelopeDoc, ExpectedDims, Manifest,
    ModuleEntry, PushoutEntry,
};
use crate::error::{Error, Result};
use crate::linalg::{map_of_vec, LinMap, Scalar};

/// A module instance to be verified.
#[derive(Clone, Debug)]
pub struct ModuleInstance {
    pub name: String,
    pub algebra: Arc<Algebra>,
    pub module: Bimodule,
    pub expected: Option<ExpectedDims>,
}

/// A push-out instance: an envelope, a module over the ambient algebra, and
/// optionally one bundled derivation document (the verification driver also
/// sweeps the whole derivation space).
#[derive(Clone, Debug)]
pub struct PushoutInstance {
    pub name: String,
    pub env: Envelope,
    pub x_b: Bimodule,
    pub derivation: Option<Derivation>,
}

/// The whole corpus.
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub modules: Vec<ModuleInstance>,
    pub pushouts: Vec<PushoutInstance>,
}

impl Corpus {
    pub fn instance_count(&self) -> usize {
        self.modules.len() + self.pushouts.len()
    }
}

/// The eight bundled algebras, keyed by name.
pub fn builtin_algebras() -> Vec<(&'static str, Arc<Algebra>)> {
    let m2 = Algebra::matrix(2);
    let k = Algebra::field();
    vec![
        ("k", k.clone()),
        ("n2", Algebra::null("n2", 1)),
        ("n2u", Envelope::unitization(Algebra::null("n2", 1)).amb().clone()),
        ("n3", Algebra::strictly_upper_triangular(3)),
        ("t2", Algebra::upper_triangular(2)),
        ("t3", Algebra::upper_triangular(3)),
        ("m2", m2.clone()),
        ("m2k", Algebra::direct_sum("m2k", &m2, &k)),
    ]
}

/// Look a bundled algebra up by name.
pub fn builtin_algebra(name: &str) -> Option<Arc<Algebra>> {
    builtin_algebras()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, a)| a)
}

fn expected(z1: usize, b1: usize, h1: usize) -> Option<ExpectedDims> {
    Some(ExpectedDims { z1, b1, h1 })
}

/// The envelope instances by name.
fn builtin_envelope(name: &str) -> Option<Envelope> {
    match name {
        "m2_identity" => Some(Envelope::identity(builtin_algebra("m2")?)),
        "k_identity" => Some(Envelope::identity(builtin_algebra("k")?)),
        "n2u_identity" => Some(Envelope::identity(builtin_algebra("n2u")?)),
        "n2_in_n2u" => {
            let n2 = builtin_algebra("n2")?;
            let n2u = builtin_algebra("n2u")?;
            let mut emb = LinMap::zeros(2, 1);
            emb[(0, 0)] = Scalar::one();
            Envelope::new(n2, n2u, emb).ok()
        }
        "n3_in_t3" => {
            let n3 = builtin_algebra("n3")?;
            let t3 = builtin_algebra("t3")?;
            // t3 basis e11 e12 e13 e22 e23 e33; n3 basis e12 e13 e23
            let mut emb = LinMap::zeros(6, 3);
            emb[(1, 0)] = Scalar::one();
            emb[(2, 1)] = Scalar::one();
            emb[(4, 2)] = Scalar::one();
            Envelope::new(n3, t3, emb).ok()
        }
        "m2_in_m2k" => {
            let m2 = builtin_algebra("m2")?;
            let m2k = builtin_algebra("m2k")?;
            let mut emb = LinMap::zeros(5, 4);
            for i in 0..4 {
                emb[(i, i)] = Scalar::one();
            }
            Envelope::new(m2, m2k, emb).ok()
        }
        _ => None,
    }
}

/// The bundled corpus, built in memory.
pub fn builtin() -> Corpus {
    let get = |n: &str| builtin_algebra(n).expect("builtin algebra");
    let mut modules = Vec::new();
    let mut add = |name: &str, alg: &Arc<Algebra>, module: Bimodule, exp: Option<ExpectedDims>| {
        modules.push(ModuleInstance {
            name: name.to_owned(),
            algebra: alg.clone(),
            module,
            expected: exp,
        });
    };

    let k = get("k");
    add("k_regular", &k, Bimodule::regular(&k), expected(0, 0, 0));
    // span A² = A, so derivations must kill all of A
    add("k_zero1", &k, Bimodule::zero_action(&k, 1), expected(0, 0, 0));

    let n2 = get("n2");
    add("n2_regular", &n2, Bimodule::regular(&n2), expected(1, 0, 1));
    add("n2_dual", &n2, Bimodule::regular(&n2).dual(), expected(1, 0, 1));

    let n2u = get("n2u");
    add("n2u_regular", &n2u, Bimodule::regular(&n2u), expected(1, 0, 1));
    add("n2u_dual", &n2u, Bimodule::regular(&n2u).dual(), expected(1, 0, 1));

    let n3 = get("n3");
    add("n3_regular", &n3, Bimodule::regular(&n3), None);
    add("n3_dual", &n3, Bimodule::regular(&n3).dual(), None);
    // z1 = maps killing span A² (dim 1): 2·(3−1) = 4; actions are zero so b1 = 0
    add("n3_zero2", &n3, Bimodule::zero_action(&n3, 2), expected(4, 0, 4));

    let t2 = get("t2");
    add("t2_regular", &t2, Bimodule::regular(&t2), expected(2, 2, 0));
    // an induced module that is not the regular one
    add("t2_outer", &t2, Bimodule::outer_square(&t2), None);

    let t3 = get("t3");
    add("t3_regular", &t3, Bimodule::regular(&t3), expected(5, 5, 0));

    let m2 = get("m2");
    add("m2_regular", &m2, Bimodule::regular(&m2), expected(3, 3, 0));
    add("m2_dual", &m2, Bimodule::regular(&m2).dual(), expected(3, 3, 0));

    let n2u_outer = Bimodule::outer_square(&n2u);
    add("n2u_outer", &n2u, n2u_outer, None);
    add("m2_outer", &m2, Bimodule::outer_square(&m2), None);

    let m2k = get("m2k");
    add("m2k_regular", &m2k, Bimodule::regular(&m2k), expected(3, 3, 0));

    let mut pushouts = Vec::new();
    let mut addp = |name: &str, x_b: Bimodule| {
        let env = builtin_envelope(name_env(name)).expect("builtin envelope");
        let derivation = first_basis_derivation(&env, &x_b);
        pushouts.push(PushoutInstance {
            name: name.to_owned(),
            env,
            x_b,
            derivation,
        });
    };
    addp("m2_identity", Bimodule::regular(&m2));
    addp("m2_in_m2k", Bimodule::regular(&m2k));
    addp("n3_in_t3", Bimodule::regular(&t3));
    addp("n2_in_n2u", Bimodule::regular(&n2u));
    addp("n2u_identity_dual", Bimodule::regular(&n2u).dual());
    addp("k_identity", Bimodule::regular(&k));

    Corpus { modules, pushouts }
}

/// Envelope name for a push-out instance name.
fn name_env(instance: &str) -> &str {
    match instance {
        "n2u_identity_dual" => "n2u_identity",
        other => other,
    }
}

/// The first basis vector of `Z¹(A, X)` as a bundled derivation, if the
/// space is nonzero.
fn first_basis_derivation(env: &Envelope, x_b: &Bimodule) -> Option<Derivation> {
    let x = x_b.restrict_through(env).ok()?;
    let z1 = derivation_space(&x);
    let first = z1.basis().first()?;
    let map = map_of_vec(x.dim(), env.sub().dim(), first);
    Derivation::new(x, map).ok()
}

// ---- document generation ---------------------------------------------------

/// Render the bundled corpus as JSON documents, keyed by file name.
/// `manifest.json` references everything else by relative path.
pub fn builtin_documents() -> BTreeMap<String, String> {
    let mut files = BTreeMap::new();
    let mut put = |name: String, value: serde_json::Value| {
        let mut text = serde_json::to_string_pretty(&value).expect("serializable");
        text.push('\n');
        files.insert(name, text);
    };

    for (name, alg) in builtin_algebras() {
        put(
            format!("{name}.json"),
            serde_json::to_value(AlgebraDoc::from_algebra(&alg)).unwrap(),
        );
    }

    let corpus = builtin();
    let mut manifest = Manifest::default();

    for inst in &corpus.modules {
        let alg_file = format!("{}.json", algebra_key(&inst.algebra));
        let module_file = format!("{}.json", inst.name);
        put(
            module_file.clone(),
            serde_json::to_value(BimoduleDoc::from_bimodule(&alg_file, &inst.module)).unwrap(),
        );
        manifest.modules.push(ModuleEntry {
            name: inst.name.clone(),
            algebra: alg_file,
            module: module_file,
            expected: inst.expected,
        });
    }

    for inst in &corpus.pushouts {
        let env_file = format!("env_{}.json", name_env(&inst.name));
        let sub_file = format!("{}.json", algebra_key(inst.env.sub()));
        let amb_file = format!("{}.json", algebra_key(inst.env.amb()));
        put(
            env_file.clone(),
            serde_json::to_value(EnvelopeDoc {
                sub: DocRef::Path(sub_file.clone()),
                amb: DocRef::Path(amb_file.clone()),
                embedding: crate::docs::matrix_to_doc(inst.env.embedding()),
            })
            .unwrap(),
        );
        let module_b_file = format!("{}_module.json", inst.name);
        put(
            module_b_file.clone(),
            serde_json::to_value(BimoduleDoc::from_bimodule(&amb_file, &inst.x_b)).unwrap(),
        );
        let derivation_file = inst.derivation.as_ref().map(|d| {
            let restricted_file = format!("{}_restricted.json", inst.name);
            put(
                restricted_file.clone(),
                serde_json::to_value(BimoduleDoc::from_bimodule(&sub_file, d.module())).unwrap(),
            );
            let dfile = format!("{}_derivation.json", inst.name);
            put(
                dfile.clone(),
                serde_json::to_value(DerivationDoc {
                    algebra: sub_file.clone(),
                    module: restricted_file,
                    map: crate::docs::matrix_to_doc(d.map()),
                })
                .unwrap(),
            );
            dfile
        });
        manifest.pushouts.push(PushoutEntry {
            name: inst.name.clone(),
            envelope: env_file,
            module_b: module_b_file,
            derivation: derivation_file,
        });
    }

    let mut text = serde_json::to_string_pretty(&manifest).expect("serializable");
    text.push('\n');
    files.insert("manifest.json".to_owned(), text);
    files
}

fn algebra_key(alg: &Arc<Algebra>) -> String {
    for (name, a) in builtin_algebras() {
        if *a == **alg {
            return name.to_owned();
        }
    }
    alg.name().to_owned()
}

// ---- loading a corpus directory --------------------------------------------

/// Load a corpus from a directory containing `manifest.json`. Per-instance
/// problems do not abort the load; they are reported as broken instances so
/// the verification driver can fail them individually.
pub struct LoadedCorpus {
    pub corpus: Corpus,
    /// Instances that failed to load: `(instance name, error text)`.
    pub broken: Vec<(String, String)>,
}

pub fn load_dir(dir: &Path) -> Result<LoadedCorpus> {
    let manifest_path = dir.join("manifest.json");
    if !manifest_path.exists() {
        return Err(Error::Doc(format!(
            "{}: no manifest.json",
            dir.display()
        )));
    }
    let manifest = crate::docs::load_manifest(&manifest_path)?;
    let mut corpus = Corpus::default();
    let mut broken = Vec::new();

    for entry in &manifest.modules {
        match load_module_entry(dir, entry) {
            Ok(inst) => corpus.modules.push(inst),
            Err(e) => broken.push((entry.name.clone(), e.to_string())),
        }
    }
    for entry in &manifest.pushouts {
        match load_pushout_entry(dir, entry) {
            Ok(inst) => corpus.pushouts.push(inst),
            Err(e) => broken.push((entry.name.clone(), e.to_string())),
        }
    }
    Ok(LoadedCorpus { corpus, broken })
}

fn load_module_entry(dir: &Path, entry: &ModuleEntry) -> Result<ModuleInstance> {
    let algebra = crate::docs::resolve_algebra(&entry.algebra, dir)?;
    let (module_alg, module) = crate::docs::load_bimodule(&dir.join(&entry.module))?;
    if *module_alg != *algebra {
        return Err(Error::Doc(format!(
            "module {} is over {:?}, manifest says {:?}",
            entry.module,
            module_alg.name(),
            algebra.name()
        )));
    }
    Ok(ModuleInstance {
        name: entry.name.clone(),
        algebra,
        module,
        expected: entry.expected,
    })
}

fn load_pushout_entry(dir: &Path, entry: &PushoutEntry) -> Result<PushoutInstance> {
    let env = crate::docs::load_envelope(&dir.join(&entry.envelope))?;
    let (xb_alg, x_b) = crate::docs::load_bimodule(&dir.join(&entry.module_b))?;
    if *xb_alg != **env.amb() {
        return Err(Error::Doc(format!(
            "module {} is over {:?}, envelope's ambient algebra is {:?}",
            entry.module_b,
            xb_alg.name(),
            env.amb().name()
        )));
    }
    let derivation = match &entry.derivation {
        None => None,
        Some(dpath) => {
            let (dalg, der) = crate::docs::load_derivation(&dir.join(dpath))?;
            if *dalg != **env.sub() {
                return Err(Error::Doc(format!(
                    "derivation {} is over {:?}, envelope's sub-algebra is {:?}",
                    dpath,
                    dalg.name(),
                    env.sub().name()
                )));
            }
            Some(der)
        }
    };
    Ok(PushoutInstance {
        name: entry.name.clone(),
        env,
        x_b,
        derivation,
    })
}
