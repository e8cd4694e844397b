use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use genfree::freeprod::io::{load_construction, load_group, Loaded};
use genfree::freeprod::{double_cosets, parse_group_ring, Construction, FreeProdError, GroupOracle};
use genfree::nil::io::{base_of, parse_nil, NilSpec};
use genfree::nil::{phi1, phi2, phi2_bounded, phi_word, NilError, NilObject, WordSet};
use genfree::{Fp, Integer, Scalar};
use serde_json::json;

use crate::report::{check_ceiling, usage, CliError, CmdResult, Report};

const MAX_DIM: (&str, usize) = ("GENFREE_MAX_DIM", 64);
/// Word oracle is skipped when it would have to multiply out more words than this.
const ORACLE_WORDS: usize = 50_000;

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    #[command(subcommand)]
    pub mode: Mode,
}

#[derive(Debug, Args)]
pub struct ConstructionFile {
    /// HNN extension description.
    #[arg(long, conflicts_with = "amalgam", required_unless_present = "amalgam")]
    pub hnn: Option<PathBuf>,
    /// Amalgamated product description.
    #[arg(long)]
    pub amalgam: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Functor {
    Phi1,
    Phi2,
    Word,
}

#[derive(Debug, Subcommand)]
pub enum Mode {
    /// Normal form of a group word.
    Normalize {
        #[command(flatten)]
        file: ConstructionFile,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Split a group-ring element by sequence type.
    Decompose {
        #[command(flatten)]
        file: ConstructionFile,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Double cosets H x K in a finite group.
    Cosets {
        file: PathBuf,
        /// Generators of H, comma-separated.
        #[arg(long, default_value = "")]
        left: String,
        /// Generators of K, comma-separated.
        #[arg(long, default_value = "")]
        right: String,
    },
    /// Nilpotency certificate of a nil object.
    NilCheck { file: PathBuf },
    /// Transport a nil object along one of the functors.
    NilMap {
        file: PathBuf,
        #[arg(long, value_enum)]
        functor: Functor,
        /// Word for `word`, letters separated by `.`; several words separated by `,`.
        #[arg(long)]
        word: Option<String>,
        /// `i,j` for the set { i^k j : k >= 0 }.
        #[arg(long)]
        power_prefix: Option<String>,
        /// Maximal number of b -> b letters in a detour, for `phi2`.
        #[arg(long)]
        bound: Option<usize>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn lift(e: FreeProdError) -> CliError {
    match e {
        FreeProdError::OracleInconsistency(m) => CliError::Invariant(m),
        other => CliError::Usage(other.to_string()),
    }
}

fn lift_nil(e: NilError) -> CliError {
    match e {
        NilError::InvariantViolation(m) => CliError::Invariant(m),
        other => CliError::Usage(other.to_string()),
    }
}

fn load(file: &ConstructionFile) -> Result<Loaded, CliError> {
    let (path, want_hnn) = match (&file.hnn, &file.amalgam) {
        (Some(p), _) => (p, true),
        (None, Some(p)) => (p, false),
        (None, None) => return Err(usage("give --hnn or --amalgam")),
    };
    let loaded = load_construction(&read(path)?).map_err(lift)?;
    match (&loaded, want_hnn) {
        (Loaded::Hnn(_), true) | (Loaded::Amalgam(_), false) => Ok(loaded),
        _ => Err(usage(format!("{} does not describe the requested kind of construction", path.display()))),
    }
}

fn normalize<C: Construction>(g: &C, word: &str, report: &mut Report) -> CmdResult
where
    C::Word: PartialEq,
{
    let w = g.parse_word(word).map_err(lift)?;
    let rendered = g.render_word(&w);
    let again = g.parse_word(&rendered).map_err(lift)?;
    report.check("normal form is stable", &rendered, g.render_word(&again));
    report.check("inverse cancels", g.render_word(&g.one()), g.render_word(&g.word_mul(&w, &g.word_inv(&w))));
    let ty = g.sequence_type(&w);
    report.check("sequence type admissible", true, ty.is_admissible());
    report.line(rendered.clone());
    report.data = json!({ "normal_form": rendered, "sequence_type": ty.to_string() });
    Ok(())
}

fn decompose<C: Construction>(g: &C, element: &str, report: &mut Report) -> CmdResult {
    let x = parse_group_ring::<C, Integer>(g, element).map_err(lift)?;
    let parts = x.grade_decompose(g);
    let mut sum = genfree::freeprod::GroupRingElement::zero(g);
    let mut rows = Vec::new();
    for (ty, part) in &parts {
        sum = sum.add(part).map_err(lift)?;
        report.check(format!("type {ty} admissible"), true, ty.is_admissible());
        report.line(format!("{ty}: {}", part.render(g)));
        rows.push(json!({ "type": ty.to_string(), "component": part.render(g) }));
    }
    report.check("components sum back", x.render(g), sum.render(g));
    report.data = json!({ "element": x.render(g), "components": rows });
    Ok(())
}

fn cosets(path: &Path, left: &str, right: &str, report: &mut Report) -> CmdResult {
    let g = load_group(&read(path)?).map_err(lift)?;
    let fg = match &g {
        GroupOracle::Finite(f) => f,
        _ => return Err(usage("double cosets need a finite group")),
    };
    let gens = |s: &str| -> Result<Vec<usize>, CliError> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| fg.index_of(t).ok_or_else(|| usage(format!("unknown element `{t}`"))))
            .collect()
    };
    let (h, k) = (fg.generated(&gens(left)?), fg.generated(&gens(right)?));
    let orbits = double_cosets(fg, &h, &k, None).map_err(lift)?;
    let covered: usize = orbits.iter().map(Vec::len).sum();
    report.check("double cosets partition the group", fg.order(), covered);
    for (i, o) in orbits.iter().enumerate() {
        // |H x K| = |H| |K| / |H ∩ x K x^-1|
        let x = o[0];
        let conj: Vec<usize> = k.iter().map(|&y| fg.mul_idx(fg.mul_idx(x, y), fg.inv_idx(x))).collect();
        let meet = h.iter().filter(|a| conj.contains(a)).count();
        report.check(format!("size of coset {i}"), h.len() * k.len() / meet, o.len());
    }
    let names: Vec<Vec<&str>> = orbits.iter().map(|o| o.iter().map(|&i| fg.names()[i].as_str()).collect()).collect();
    report.line(format!("{} double cosets", names.len()));
    for o in &names {
        report.line(format!("{{{}}}", o.join(", ")));
    }
    report.data = json!({ "orbits": names });
    Ok(())
}

fn all_words_vanish<S: Scalar>(x: &NilObject<S>, k: usize) -> Option<bool> {
    let letters = x.ring().letters();
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..letters.len()).filter(move |&i| w.last().map_or(true, |&p| letters[p].dst == letters[i].src)).map(
                    move |i| {
                        let mut w = w.clone();
                        w.push(i);
                        w
                    },
                )
            })
            .collect();
        if layer.len() > ORACLE_WORDS {
            return None;
        }
    }
    Some(x.total_dim() == 0 || layer.iter().all(|w| x.word_matrix(w).map_or(false, |m| m.is_zero())))
}

fn nil_check<S: Scalar>(json: &str, report: &mut Report) -> CmdResult {
    let x: NilObject<S> = parse_nil(json).map_err(lift_nil)?;
    check_ceiling("dimension", MAX_DIM.0, MAX_DIM.1, x.total_dim())?;
    let n = x.is_nilpotent();
    if !x.check_filtration(&n.filtration) {
        return Err(CliError::Invariant("kernel chain violates the filtration law".into()));
    }
    report.check("filtration law", true, true);
    if let Some(oracle) = all_words_vanish(&x, x.total_dim()) {
        report.check("all words of length dim M vanish", n.nilpotent, oracle);
    }
    report.check("nilpotent", true, n.nilpotent);
    let index = n.index.map_or("none".to_string(), |i| i.to_string());
    report.line(format!("nilpotent: {}, index {index}", n.nilpotent));
    report.line(format!("kernel dimensions: {:?}", n.filtration.dims()));
    report.data = json!({
        "base": S::base_label(),
        "dims": x.dims(),
        "nilpotent": n.nilpotent,
        "index": n.index,
        "filtration_dims": n.filtration.dims(),
    });
    Ok(())
}

fn nil_map<S: Scalar>(json: &str, args: (&Functor, &Option<String>, &Option<String>, &Option<usize>), report: &mut Report) -> CmdResult {
    let (functor, word, power_prefix, bound) = args;
    let x: NilObject<S> = parse_nil(json).map_err(lift_nil)?;
    check_ceiling("dimension", MAX_DIM.0, MAX_DIM.1, x.total_dim())?;
    if !report.check("input nilpotent", true, x.is_nilpotent().nilpotent) && bound.is_none() {
        return Ok(());
    }
    let y = match functor {
        Functor::Phi1 => phi1(&x),
        Functor::Phi2 => match bound {
            Some(k) => phi2_bounded(&x, *k),
            None => phi2(&x),
        },
        Functor::Word => {
            let set = match (word, power_prefix) {
                (Some(w), None) => {
                    WordSet::Finite(w.split(',').map(|u| u.split('.').map(|l| l.trim().to_string()).collect()).collect())
                }
                (None, Some(p)) => match p.split_once(',') {
                    Some((i, j)) => WordSet::PowerPrefix { i: i.trim().into(), j: j.trim().into() },
                    None => return Err(usage("--power-prefix takes `i,j`")),
                },
                _ => return Err(usage("`word` needs exactly one of --word and --power-prefix")),
            };
            phi_word(&x, &set)
        }
    }
    .map_err(lift_nil)?;
    report.check("output nilpotent", x.is_nilpotent().nilpotent, y.is_nilpotent().nilpotent);
    report.line(genfree::nil::io::to_json(&y));
    report.data = serde_json::to_value(NilSpec::from_object(&y)).expect("spec serializes");
    Ok(())
}

/// Runs `$body::<S>` for the scalar type named by a nil file's base label.
macro_rules! with_base {
    ($base:expr, $f:ident ( $($arg:expr),* )) => {
        match $base.as_str() {
            "Z" => $f::<Integer>($($arg),*),
            "GF(2)" => $f::<Fp<2>>($($arg),*),
            "GF(3)" => $f::<Fp<3>>($($arg),*),
            "GF(5)" => $f::<Fp<5>>($($arg),*),
            "GF(7)" => $f::<Fp<7>>($($arg),*),
            "GF(11)" => $f::<Fp<11>>($($arg),*),
            "GF(13)" => $f::<Fp<13>>($($arg),*),
            "GF(101)" => $f::<Fp<101>>($($arg),*),
            other => Err(usage(format!("unsupported base `{other}` (Z or GF(p) for p in 2, 3, 5, 7, 11, 13, 101)"))),
        }
    };
}

pub fn run(args: &AlgebraArgs, report: &mut Report) -> CmdResult {
    match &args.mode {
        Mode::Normalize { file, word } => match load(file)? {
            Loaded::Hnn(h) => normalize(&h, word, report),
            Loaded::Amalgam(a) => normalize(&a, word, report),
        },
        Mode::Decompose { file, element } => match load(file)? {
            Loaded::Hnn(h) => decompose(&h, element, report),
            Loaded::Amalgam(a) => decompose(&a, element, report),
        },
        Mode::Cosets { file, left, right } => cosets(file, left, right, report),
        Mode::NilCheck { file } => {
            let text = read(file)?;
            let base = base_of(&text).map_err(lift_nil)?;
            with_base!(base, nil_check(&text, report))
        }
        Mode::NilMap { file, functor, word, power_prefix, bound } => {
            let text = read(file)?;
            let base = base_of(&text).map_err(lift_nil)?;
            with_base!(base, nil_map(&text, (functor, word, power_prefix, bound), report))
        }
    }
}
