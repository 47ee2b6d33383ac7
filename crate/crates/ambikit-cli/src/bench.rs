//! The saturation-vs-elimination benchmark and its two ideal routes.
//!
//! Both routes compute the vanishing ideal of a Gaussian model, by very
//! different algebra:
//!
//! * **saturation** — start from the finite implicit description and
//!   close it up.  For a plain DAG model this is the classical recipe:
//!   the conditional-independence minors |Σ_{{u}∪pa(v)}, {v}∪pa(v)}| of the
//!   ordered local Markov property generate an ideal that is then
//!   saturated successively at each parental principal minor |Σ_{pa(v)}|.
//!   For a concentration model the transferred generators are saturated
//!   at the determinant via the library's monoid saturation.
//! * **elimination** — form the graph of the parametrization in the
//!   combined parameter-and-model ring, invert every localized
//!   denominator with one auxiliary variable, and eliminate the
//!   parameters with a block order.  Always correct, often hopeless: on
//!   larger instances this route is expected to hit its deadline, which
//!   the benchmark records as a timeout row rather than an error.
//!
//! Rows carry a deterministic FNV-1a hash of the sorted generators so
//! results can be compared across runs and machines without shipping the
//! full basis.

use std::time::Instant;

use ambikit::groebner::{saturate, Budget, GroebnerError, IdealGens};
use ambikit::modelzoo::{GraphSpec, ModelSpec};
use ambikit::polyring::{PolyMatrix, Polynomial, VarTable};

use crate::document::{Family, ModelDocument};
use crate::CliError;

/// Which route a benchmark invocation runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchMethod {
    Saturation,
    Elimination,
}

impl BenchMethod {
    pub fn name(self) -> &'static str {
        match self {
            BenchMethod::Saturation => "saturation",
            BenchMethod::Elimination => "elimination",
        }
    }
}

/// One CSV row of benchmark output.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub label: String,
    pub family: &'static str,
    pub method: &'static str,
    /// Generator count; `None` on timeout.
    pub generators: Option<usize>,
    pub millis: u128,
    /// FNV-1a hash of the sorted generators; `None` on timeout.
    pub hash: Option<u64>,
    pub status: &'static str,
}

impl BenchRow {
    /// The CSV header matching [`BenchRow::to_csv`].
    pub fn header() -> &'static str {
        "label,family,method,generators,millis,hash,status"
    }

    pub fn to_csv(&self) -> String {
        let generators = self
            .generators
            .map(|g| g.to_string())
            .unwrap_or_default();
        let hash = self
            .hash
            .map(|h| format!("fnv1a64:{h:016x}"))
            .unwrap_or_default();
        format!(
            "\"{}\",{},{},{},{},{},{}",
            self.label.replace('"', "\"\""),
            self.family,
            self.method,
            generators,
            self.millis,
            hash,
            self.status
        )
    }
}

/// Canonical listing of an ideal's generators: sorted by total degree,
/// then term count, then text.  This is the byte-stable order used for
/// printed ideals and benchmark hashes.
pub fn sorted_generator_strings(gens: &IdealGens) -> Vec<String> {
    let mut items: Vec<(u32, usize, String)> = gens
        .gens()
        .iter()
        .map(|g| {
            (
                g.degree().unwrap_or(0),
                g.terms().len(),
                g.primitive_signed().to_string(),
            )
        })
        .collect();
    items.sort();
    items.into_iter().map(|(_, _, s)| s).collect()
}

/// 64-bit FNV-1a over the given lines, each terminated by a newline.
pub fn fnv1a64(lines: &[String]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for line in lines {
        for &b in line.as_bytes() {
            hash ^= u64::from(b);
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
        hash ^= u64::from(b'\n');
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn plain_dag(spec: &GraphSpec) -> Result<(), CliError> {
    if !spec.bidirected.is_empty()
        || !spec.interventions.is_empty()
        || spec.vertex_colors.is_some()
        || spec.edge_colors.is_some()
        || spec.monotone
    {
        return Err(CliError::Schema(
            "the benchmark's independence-minor route needs a plain DAG document".to_string(),
        ));
    }
    Ok(())
}

/// The vanishing ideal of a plain Gaussian DAG model by the
/// conditional-independence route: one minor per ordered local Markov
/// statement, saturated at each distinct parental principal minor.
pub fn dag_ci_saturation(spec: &GraphSpec, budget: &Budget) -> Result<IdealGens, CliError> {
    plain_dag(spec)?;
    let n = spec.n;
    let mut names = Vec::with_capacity(n * (n + 1) / 2);
    for i in 1..=n {
        for j in i..=n {
            names.push(format!("s_{i}_{j}"));
        }
    }
    let vars = VarTable::new(names).map_err(internal)?;
    let smat = PolyMatrix::from_fn(&vars, n, n, |r, c| {
        let (a, b) = if r <= c { (r + 1, c + 1) } else { (c + 1, r + 1) };
        Polynomial::var_named(&vars, &format!("s_{a}_{b}")).unwrap()
    });

    let mut ci_minors = Vec::new();
    let mut parental: Vec<Polynomial> = Vec::new();
    let mut seen_parental = std::collections::BTreeSet::new();
    for v in 2..=n {
        let pa: Vec<usize> = (1..v).filter(|&a| spec.directed.contains(&(a, v))).collect();
        for u in 1..v {
            if pa.contains(&u) {
                continue;
            }
            let mut rows: Vec<usize> = pa.iter().map(|&a| a - 1).collect();
            rows.push(u - 1);
            rows.sort_unstable();
            let mut cols: Vec<usize> = pa.iter().map(|&a| a - 1).collect();
            cols.push(v - 1);
            cols.sort_unstable();
            ci_minors.push(smat.minor(&rows, &cols).map_err(internal)?);
        }
        if !pa.is_empty() {
            let idx: Vec<usize> = pa.iter().map(|&a| a - 1).collect();
            let m = smat.minor(&idx, &idx).map_err(internal)?;
            if seen_parental.insert(m.primitive_signed().to_string()) {
                parental.push(m);
            }
        }
    }
    // Saturate cheapest factors first; later steps on an already saturated
    // ideal are pure confirmation.
    parental.sort_by_key(|p| (p.degree().unwrap_or(0), p.terms().len()));
    let mut ideal = IdealGens::new(&vars, ci_minors).map_err(groebner_err)?;
    for p in &parental {
        ideal = saturate(&ideal, p, budget).map_err(groebner_err)?;
    }
    Ok(ideal)
}

/// The vanishing ideal by parameter elimination: the graph ideal
/// `{den_c · x_c − num_c}` of the parametrization plus the model's
/// parameter equations, with one auxiliary variable inverting the product
/// of all parameter-side denominators, eliminated down to the model
/// coordinates with a block order.
pub fn elimination_ideal(m: &ModelSpec, budget: &Budget) -> Result<IdealGens, CliError> {
    let param = m.param_table();
    let model = m.model_table();
    let mut aux = "aux".to_string();
    let mut k = 0usize;
    while param.index_of(&aux).is_some() || model.index_of(&aux).is_some() {
        aux = format!("aux{k}");
        k += 1;
    }
    let combined_names: Vec<String> = param
        .names()
        .iter()
        .chain(model.names().iter())
        .cloned()
        .chain(std::iter::once(aux.clone()))
        .collect();
    let combined = VarTable::new(combined_names).map_err(internal)?;
    let lift = |p: &Polynomial| -> Result<Polynomial, CliError> {
        Polynomial::parse(&combined, &p.to_string()).map_err(internal)
    };

    let mut gens = Vec::new();
    for (j, comp) in m.iso().alpha().components().iter().enumerate() {
        let x = Polynomial::var_named(&combined, model.name(j)).map_err(internal)?;
        let num = lift(comp.numerator())?;
        let den = lift(comp.denominator())?;
        gens.push(&(&den * &x) - &num);
    }
    for g in m.eq_gens() {
        gens.push(lift(g)?);
    }
    let mut denom_product = Polynomial::one(&combined);
    for g in m.iso().sbar_param().iter() {
        denom_product = &denom_product * &lift(g)?;
    }
    let y = Polynomial::var_named(&combined, &aux).map_err(internal)?;
    gens.push(&(&y * &denom_product) - &Polynomial::one(&combined));

    let ideal = IdealGens::new(&combined, gens).map_err(groebner_err)?;
    let mut drop: Vec<usize> = (0..param.len()).collect();
    drop.push(combined.len() - 1);
    let eliminated = ambikit::groebner::eliminate(&ideal, &drop, budget).map_err(groebner_err)?;

    // Rebuild over the model's own table (the kept names coincide).
    let mut out = Vec::with_capacity(eliminated.gens().len());
    for g in eliminated.gens() {
        out.push(Polynomial::parse(model, &g.to_string()).map_err(internal)?);
    }
    IdealGens::new(model, out).map_err(groebner_err)
}

fn internal<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Internal(e.to_string())
}

fn groebner_err(e: GroebnerError) -> CliError {
    match e {
        GroebnerError::Cancelled => CliError::Deadline,
        other => CliError::Internal(other.to_string()),
    }
}

/// Runs one benchmark method on a Gaussian document and returns the CSV
/// row.  A deadline overrun is data (status `timeout`), not an error.
pub fn run_bench(
    doc: &ModelDocument,
    method: BenchMethod,
    timeout_seconds: Option<u64>,
) -> Result<BenchRow, CliError> {
    let spec = doc.graph_spec()?.ok_or_else(|| {
        CliError::Schema("the benchmark expects a Gaussian (concentration or sem) document".into())
    })?;
    let label = spec
        .label
        .clone()
        .unwrap_or_else(|| format!("{} on {} vertices", doc.family.name(), spec.n));
    let budget = doc.budget(timeout_seconds);

    let start = Instant::now();
    let outcome = match (doc.family, method) {
        (Family::Sem, BenchMethod::Saturation) => dag_ci_saturation(&spec, &budget),
        (Family::Concentration, BenchMethod::Saturation) => {
            let m = doc.build()?;
            ambikit::implicitize::vanishing_ideal_with(&m, &budget).map_err(CliError::from)
        }
        (_, BenchMethod::Elimination) => {
            let m = doc.build()?;
            elimination_ideal(&m, &budget)
        }
        _ => unreachable!("graph_spec returned Some for a non-Gaussian family"),
    };
    let millis = start.elapsed().as_millis();

    match outcome {
        Ok(ideal) => {
            let lines = sorted_generator_strings(&ideal);
            Ok(BenchRow {
                label,
                family: doc.family.name(),
                method: method.name(),
                generators: Some(lines.len()),
                millis,
                hash: Some(fnv1a64(&lines)),
                status: "ok",
            })
        }
        Err(CliError::Deadline) => Ok(BenchRow {
            label,
            family: doc.family.name(),
            method: method.name(),
            generators: None,
            millis,
            hash: None,
            status: "timeout",
        }),
        Err(other) => Err(other),
    }
}
