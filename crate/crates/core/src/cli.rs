//! Command-line front end. [`run`] is the whole program minus process exit,
//! so tests can drive it directly.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cosets::{FinitarySubset, Side};
use crate::error::{Error, Result};
use crate::orbit_geometry::{GeometryReport, OrbitLabel, Space};
use crate::root_datum::RootDatum;
use crate::syntax::parse_coweight;
use crate::verify::{self, Parabolics, VerificationJob, LEMMAS};
use crate::weyl_ext::ExtAffineElement;

#[derive(Parser, Debug)]
#[command(name = "weylext", version, about = "Queries on extended affine Weyl groups and their orbit labels")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Args, Debug)]
pub struct GlobalOpts {
    /// Preset name (GL2, PGL2, GL3, PGL3) or path to a JSON datum spec.
    #[arg(long, global = true, default_value = "GL2")]
    pub datum: String,
    /// Translation bound ‖λ‖∞ for sweeps and enumerations.
    #[arg(long = "box", global = true)]
    pub box_size: Option<i64>,
    /// Finitary subset of S_aff, e.g. "s1,a1". Empty means A = ∅.
    #[arg(long, global = true)]
    pub parabolic: Option<String>,
    /// Worker threads for verification sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Iwahori,
    Spherical,
    Whittaker,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Fl,
    Gr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MvSide {
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "T", alias = "t")]
    T,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Length ℓ(w).
    Len { elem: String },
    /// Product a·b.
    Mul { a: String, b: String },
    /// Inverse.
    Inv { elem: String },
    /// Reduced expression ω·s_{i1}⋯s_{ik}.
    Word { elem: String },
    /// Bruhat order a ≤ b.
    Leq { a: String, b: String },
    /// Length-zero part ω of w = ω·(element of W_aff).
    Omega { elem: String },
    /// Minimal (or maximal) representative of W_A·w or w·W_A.
    Minrep {
        elem: String,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
        /// Return the maximal representative instead.
        #[arg(long)]
        max: bool,
    },
    /// Membership in W^S_ext.
    IsWs { elem: String },
    /// Membership in ᴬW^S_ext for the --parabolic subset.
    IsAws { elem: String },
    /// w^L_λ, the minimal element of W·t_λ.
    Wl {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// w^R_λ, the minimal element of t_λ·W.
    Wr {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Whether w is restricted.
    IsRestricted { elem: String },
    /// The box Π_μ containing w⁻¹ of the fundamental alcove.
    PiBox { elem: String },
    /// w = x·t_ν with x restricted and ν antidominant.
    SteinbergFactor { elem: String },
    /// y·t_{w∘(μ)} for restricted y in ᴬW^S_ext and dominant μ.
    SteinbergLabel {
        elem: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Restricted elements of ᴬW^S_ext in the box.
    EnumerateRestricted,
    /// Dimension of an orbit.
    OrbitDim {
        /// Element literal, or a dominant coweight for spherical orbits.
        target: String,
        #[arg(long, value_enum, default_value_t = FlavorArg::Iwahori)]
        flavor: FlavorArg,
        #[arg(long, value_enum, default_value_t = SpaceArg::Gr)]
        space: SpaceArg,
    },
    /// Closure order between two orbits.
    ClosureLeq {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = FlavorArg::Iwahori)]
        flavor: FlavorArg,
        #[arg(long, value_enum, default_value_t = SpaceArg::Gr)]
        space: SpaceArg,
    },
    /// Dimension of Gr^λ ∩ S_μ or Gr^λ ∩ T_μ.
    MvDim {
        #[arg(long, value_enum)]
        side: MvSide,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Bound on the convolution fiber over ẏL_η.
    FiberBound {
        elem: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
    },
    /// Bound on Iwahori / semi-infinite intersections.
    SemiinfBound {
        elem: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
    },
    /// Whittaker obstruction bound for y, --parabolic and μ.
    WhitObstruction {
        elem: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Write an SVG of the alcove picture (rank 2 only).
    PlotAlcoves {
        #[arg(long)]
        out: String,
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
    /// Run a verification sweep; "all" runs every check.
    Verify { lemma: String },
}

/// What a verb produced: text for humans, JSON for scripts.
struct Reply {
    text: String,
    json: Value,
}

impl Reply {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Self { text: text.into(), json }
    }
}

/// Exit status plus captured stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let msg = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: msg, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: msg }
            };
        }
    };
    let format = cli.global.format;
    match execute(&cli) {
        Ok((reply, code, stderr)) => {
            let mut stdout = match format {
                Format::Text => reply.text,
                Format::Json => serde_json::to_string_pretty(&reply.json).expect("json"),
            };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome { code, stdout, stderr }
        }
        Err(e) => Outcome {
            code: if e.is_usage() { 1 } else { 2 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn execute(cli: &Cli) -> Result<(Reply, i32, String)> {
    let g = &cli.global;
    let d = RootDatum::load(&g.datum)?;
    let elem = |s: &str| d.parse_element(s);
    let cw = |s: &str| parse_coweight(s, d.rank());
    let parabolic = || -> Result<FinitarySubset> { d.parse_parabolic(g.parabolic.as_deref().unwrap_or("")) };
    let canon = |a: &ExtAffineElement| d.canonical(a);
    let elem_reply = |a: &ExtAffineElement| Reply::new(canon(a), json!({ "element": canon(a), "literal": d.literal(a) }));
    let flag = |b: bool| Reply::new(b.to_string(), json!({ "value": b }));
    let int = |n: u64| Reply::new(n.to_string(), json!({ "value": n }));
    let ok = |r: Reply| Ok((r, 0, String::new()));

    match &cli.verb {
        Verb::Len { elem: e } => ok(int(d.length(&elem(e)?))),
        Verb::Mul { a, b } => ok(elem_reply(&elem(a)?.mul(&elem(b)?))),
        Verb::Inv { elem: e } => ok(elem_reply(&elem(e)?.inv())),
        Verb::Word { elem: e } => {
            let w = d.omega_decompose(&elem(e)?);
            let word = d.word_string(&w.letters);
            let text = if w.omega.is_identity() { word.clone() } else { format!("{} * {word}", canon(&w.omega)) };
            ok(Reply::new(text, json!({ "omega": canon(&w.omega), "word": word, "length": w.letters.len() })))
        }
        Verb::Leq { a, b } => ok(flag(d.bruhat_leq(&elem(a)?, &elem(b)?))),
        Verb::Omega { elem: e } => ok(elem_reply(&d.omega_decompose(&elem(e)?).omega)),
        Verb::Minrep { elem: e, side, max } => {
            let w = elem(e)?;
            let a = match &g.parabolic {
                Some(p) => d.parse_parabolic(p)?,
                None => d.finite_parabolic(),
            };
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            ok(elem_reply(&if *max { d.max_rep(&w, &a, side) } else { d.min_rep(&w, &a, side) }))
        }
        Verb::IsWs { elem: e } => ok(flag(d.is_in_ws(&elem(e)?))),
        Verb::IsAws { elem: e } => ok(flag(d.is_in_aws(&elem(e)?, &parabolic()?))),
        Verb::Wl { lambda } => ok(elem_reply(&d.w_l(&cw(lambda)?))),
        Verb::Wr { lambda } => ok(elem_reply(&d.w_r(&cw(lambda)?))),
        Verb::IsRestricted { elem: e } => ok(flag(d.is_restricted(&elem(e)?))),
        Verb::PiBox { elem: e } => {
            let b = d.pi_box_of(&elem(e)?);
            let text = format!("pairings {:?}\nmu {}", b.pairings, b.mu);
            ok(Reply::new(text, json!({ "pairings": b.pairings, "mu": b.mu })))
        }
        Verb::SteinbergFactor { elem: e } => {
            let f = d.steinberg_factor(&elem(e)?)?;
            let (lx, lt, lw) = f.lengths;
            let text = format!("x: {}\nnu: {}\nlengths: {lx} + {lt} = {lw}", canon(&f.x), f.nu);
            ok(Reply::new(text, json!({ "x": canon(&f.x), "nu": f.nu, "lengths": [lx, lt, lw] })))
        }
        Verb::SteinbergLabel { elem: e, mu } => ok(elem_reply(&d.steinberg_label(&elem(e)?, &cw(mu)?, &parabolic()?)?)),
        Verb::EnumerateRestricted => {
            let bound = g.box_size.unwrap_or(1);
            let list = d.enumerate_restricted(&parabolic()?, bound);
            let items: Vec<String> = list.iter().map(canon).collect();
            ok(Reply::new(items.join("\n"), json!({ "elements": items })))
        }
        Verb::OrbitDim { target, flavor, space } => {
            let label = make_label(&d, target, *flavor, *space, g)?;
            ok(int(d.orbit_dim(&label)))
        }
        Verb::ClosureLeq { a, b, flavor, space } => {
            let la = make_label(&d, a, *flavor, *space, g)?;
            let lb = make_label(&d, b, *flavor, *space, g)?;
            ok(flag(d.closure_leq(&la, &lb)?))
        }
        Verb::MvDim { side, lambda, mu } => {
            let (l, m) = (cw(lambda)?, cw(mu)?);
            let rep = match side {
                MvSide::S => d.mv_intersection_s(&l, &m)?,
                MvSide::T => d.mv_intersection_t(&l, &m)?,
            };
            ok(report_reply(&rep))
        }
        Verb::FiberBound { elem: e, mu, eta } => ok(report_reply(&d.conv_fiber_bound(&elem(e)?, &cw(mu)?, &cw(eta)?)?)),
        Verb::SemiinfBound { elem: e, nu } => ok(report_reply(&d.iwahori_semiinf_bound(&elem(e)?, &cw(nu)?)?)),
        Verb::WhitObstruction { elem: e, mu } => {
            ok(report_reply(&d.whittaker_serre_obstruction(&elem(e)?, &parabolic()?, &cw(mu)?)?))
        }
        Verb::PlotAlcoves { out, bound } => {
            let svg = crate::svg::plot_alcoves(&d, *bound)?;
            std::fs::write(out, svg).map_err(|e| Error::Io(format!("{out}: {e}")))?;
            ok(Reply::new(out.clone(), json!({ "written": out })))
        }
        Verb::Verify { lemma } => run_verify(&d, lemma, g),
    }
}

fn make_label(d: &RootDatum, target: &str, flavor: FlavorArg, space: SpaceArg, g: &GlobalOpts) -> Result<OrbitLabel> {
    let space = match space {
        SpaceArg::Fl => Space::Fl,
        SpaceArg::Gr => Space::Gr,
    };
    match flavor {
        FlavorArg::Iwahori => d.iwahori_label(space, &d.parse_element(target)?),
        FlavorArg::Spherical => {
            if space != Space::Gr {
                return Err(Error::InvalidLabel("spherical orbits live on Gr".into()));
            }
            d.spherical_label(&parse_coweight(target, d.rank())?)
        }
        FlavorArg::Whittaker => {
            let a = d.parse_parabolic(g.parabolic.as_deref().unwrap_or(""))?;
            d.whittaker_label(space, &a, &d.parse_element(target)?)
        }
    }
}

fn report_reply(rep: &GeometryReport) -> Reply {
    Reply::new(rep.to_string(), serde_json::to_value(rep).expect("report serializes"))
}

fn run_verify(d: &RootDatum, lemma: &str, g: &GlobalOpts) -> Result<(Reply, i32, String)> {
    let lemmas: Vec<&str> = if lemma.eq_ignore_ascii_case("all") { LEMMAS.to_vec() } else { vec![lemma] };
    let parabolics = match &g.parabolic {
        Some(p) => Parabolics::List(vec![d.parse_parabolic(p)?]),
        None => Parabolics::All,
    };
    let mut texts = Vec::new();
    let mut jsons = Vec::new();
    let mut stderr = String::new();
    let mut all_passed = true;
    for l in lemmas {
        let job = VerificationJob::new(l, d)
            .with_box(g.box_size.unwrap_or_else(|| verify::default_box(d)))
            .with_jobs(g.jobs)
            .with_parabolics(parabolics.clone());
        let report = verify::run_verification(&job)?;
        all_passed &= report.passed();
        stderr.push_str(&format!("{}: {:.3}s\n", report.lemma, report.elapsed.as_secs_f64()));
        texts.push(report.render_text());
        jsons.push(serde_json::to_value(&report).expect("report serializes"));
    }
    let json = if jsons.len() == 1 { jsons.pop().unwrap() } else { Value::Array(jsons) };
    Ok((Reply::new(texts.join("\n"), json), if all_passed { 0 } else { 2 }, stderr))
}
