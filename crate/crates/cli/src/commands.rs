use std::path::{Path, PathBuf};
use std::str::FromStr;

use gaussradon::coord::EigenSchedule;
use gaussradon::format::{format_f64, parse_f64, parse_grid};
use gaussradon::support::{plane_directions, DEFAULT_CHORD_NODES, DEFAULT_TOL};
use gaussradon::{
    ball_mass_estimate, classical_sinogram, f_n_eval, radon_closed, radon_mc, radon_quadrature, sinogram_gen,
    support_recover, BumpFunction, CoordVec, DualBall, ExponentialFunctional, GaussianSampler, HermiteBasis, Method,
    QuadratureSpec, Sinogram, SinogramMethod, TransformResult,
};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult, WithKey};
use crate::output::{emit, Table};
use crate::spec::{parse_directions, parse_subspace, SubspaceSpec};
use crate::{
    BallmassArgs, BasisAction, Cli, Command, Format, MeasureAction, RecoverArgs, SamplingArgs, SinogramArgs, TowerArgs,
    TransformArgs,
};

const DEFAULT_SEED: u64 = 1;
const DEFAULT_SAMPLES: u64 = 100_000;

pub struct Ctx {
    config: RunConfig,
    out: Option<PathBuf>,
    pub format: Format,
    pub schedule: EigenSchedule,
}

impl Ctx {
    /// Flag value, else `[section] key`, else nothing.
    fn pick<T: FromStr>(&self, flag: Option<T>, section: &str, key: &str) -> CliResult<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.config.get(section, key),
        }
    }

    fn require<T: FromStr>(&self, flag: Option<T>, section: &str, key: &str) -> CliResult<T>
    where
        T::Err: std::fmt::Display,
    {
        self.pick(flag, section, key)?.ok_or_else(|| {
            CliError::invalid(&format!("--{}", key.replace('_', "-")), format!("required (or set {section}.{key} in the config)"))
        })
    }

    /// Run-wide value: flag, else `run.key`, else `default`; must be positive.
    fn positive<T>(&self, flag: Option<T>, key: &str, default: T) -> CliResult<T>
    where
        T: FromStr + PartialOrd + Default + Copy,
        T::Err: std::fmt::Display,
    {
        let v = match flag {
            Some(v) => v,
            None => self.config.run(key)?.unwrap_or(default),
        };
        if v <= T::default() {
            return Err(CliError::invalid(key, "must be positive"));
        }
        Ok(v)
    }

    fn seed(&self, s: &SamplingArgs) -> CliResult<u64> {
        self.positive(s.seed, "seed", DEFAULT_SEED)
    }

    fn samples(&self, s: &SamplingArgs) -> CliResult<u64> {
        self.positive(s.n, "samples", DEFAULT_SAMPLES)
    }

    fn nodes(&self, s: &SamplingArgs, default: usize) -> CliResult<usize> {
        self.positive(s.nodes, "nodes", default)
    }

    /// Truncation dimension, defaulting to the smallest one that covers `needed`.
    fn truncation(&self, s: &SamplingArgs, needed: usize) -> CliResult<usize> {
        self.positive(s.dim, "truncation_dim", needed.max(1))
    }

    pub fn emit(&self, text: &str) -> CliResult<()> {
        emit(self.out.as_deref(), text)
    }

    fn gnuplot(&self) -> bool {
        self.format == Format::Gnuplot
    }
}

pub fn run(cli: Cli) -> CliResult<()> {
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let format = match cli.format {
        Some(f) => f,
        None => config.run::<Format>("format")?.unwrap_or(Format::Csv),
    };
    let schedule = match cli.schedule.as_deref().or(config.raw("run", "eigen_schedule")) {
        Some(text) => EigenSchedule::parse(text).key("eigen_schedule")?,
        None => EigenSchedule::default(),
    };
    let threads = match cli.threads {
        Some(0) => return Err(CliError::invalid("threads", "must be positive")),
        Some(t) => Some(t),
        None => config.run::<usize>("threads")?,
    };
    if let Some(t) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::invalid("threads", e))?;
    }
    let ctx = Ctx { config, out: cli.out, format, schedule };
    match cli.command {
        Command::Transform(a) => transform(&ctx, a),
        Command::Sinogram(a) => sinogram(&ctx, a),
        Command::Recover(a) => recover(&ctx, a),
        Command::Tower(a) => tower(&ctx, a),
        Command::Ballmass(a) => ballmass(&ctx, a),
        Command::Basis { action: BasisAction::Dump { n, grid } } => basis_dump(&ctx, n, grid),
        Command::Measure { action: MeasureAction::Sample { subspace, sampling } } => measure_sample(&ctx, subspace, sampling),
        Command::Selftest(a) => crate::selftest::run(&ctx, a),
    }
}

fn functional(key: &str, text: &str) -> CliResult<ExponentialFunctional> {
    ExponentialFunctional::parse(text).key(key)
}

fn method(text: Option<String>) -> CliResult<Method> {
    text.map_or(Ok(Method::Closed), |m| m.parse().key("method"))
}

fn transform(ctx: &Ctx, a: TransformArgs) -> CliResult<()> {
    let phi = functional("phi", &ctx.require(a.phi, "transform", "phi")?)?;
    let space = parse_subspace("subspace", &ctx.require(a.subspace, "transform", "subspace")?)?;
    let method = method(ctx.pick(a.method, "transform", "method")?)?;
    let s = &a.sampling;
    let result: TransformResult = match method {
        Method::Closed => radon_closed(&phi, &space.affine()),
        Method::MonteCarlo => {
            let affine = space.affine();
            let dim = ctx.truncation(s, phi.max_index().max(affine.block_dim()))?;
            radon_mc(&phi, &affine, dim, ctx.samples(s)?, ctx.seed(s)?)?
        }
        Method::Quadrature => {
            let SubspaceSpec::Hyperplane(plane) = &space else {
                return Err(CliError::invalid("subspace", "the quad method needs a hyperplane"));
            };
            let spec = QuadratureSpec::new(ctx.nodes(s, QuadratureSpec::default().nodes_per_dim)?)?;
            radon_quadrature(&phi, plane, &spec)?
        }
    };
    let mut table = Table::new(["method", "re", "im", "stderr", "samples_or_nodes"]);
    table.push(vec![
        result.method.to_string(),
        format_f64(result.value.re),
        format_f64(result.value.im),
        format_f64(result.stderr),
        result.samples_or_nodes.to_string(),
    ]);
    ctx.emit(&table.render(ctx.format))
}

fn sinogram(ctx: &Ctx, a: SinogramArgs) -> CliResult<()> {
    let offsets = parse_grid(&ctx.require(a.offsets, "sinogram", "offsets")?).key("offsets")?;
    let directions = match (ctx.pick(a.directions, "sinogram", "directions")?, ctx.pick(a.angles, "sinogram", "angles")?) {
        (Some(_), Some(_)) => return Err(CliError::invalid("directions", "give either directions or angles, not both")),
        (Some(d), None) => parse_directions("directions", &d)?,
        (None, Some(0)) => return Err(CliError::invalid("angles", "must be positive")),
        (None, Some(k)) => plane_directions(k),
        (None, None) => return Err(CliError::invalid("--directions", "required (or --angles)")),
    };
    let s = &a.sampling;
    let result = if let Some(radius) = ctx.pick(a.bump_radius, "sinogram", "bump_radius")? {
        let center = match ctx.pick(a.bump_center, "sinogram", "bump_center")? {
            Some(c) => c.split(',').map(parse_f64).collect::<gaussradon::Result<Vec<f64>>>().key("bump_center")?,
            None => vec![0.0, 0.0],
        };
        let bump = BumpFunction::new(center, radius).key("bump_radius")?;
        classical_sinogram(&bump, &directions, &offsets, ctx.nodes(s, DEFAULT_CHORD_NODES)?).key("bump_radius")?
    } else {
        let phi = functional("phi", &ctx.require(a.phi, "sinogram", "phi")?)?;
        let method = match method(ctx.pick(a.method, "sinogram", "method")?)? {
            Method::Closed => SinogramMethod::Closed,
            Method::MonteCarlo => {
                let needed = directions.iter().map(CoordVec::max_index).max().unwrap_or(0).max(phi.max_index());
                SinogramMethod::MonteCarlo {
                    truncation_dim: ctx.truncation(s, needed)?,
                    count: ctx.samples(s)?,
                    seed: ctx.seed(s)?,
                }
            }
            Method::Quadrature => {
                SinogramMethod::Quadrature(QuadratureSpec::new(ctx.nodes(s, QuadratureSpec::default().nodes_per_dim)?)?)
            }
        };
        sinogram_gen(&phi, &directions, &offsets, method)?
    };
    ctx.emit(&result.to_text(ctx.gnuplot()))
}

fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn recover(ctx: &Ctx, a: RecoverArgs) -> CliResult<()> {
    let input: PathBuf = ctx.require(a.input, "recover", "input").map_err(|_| CliError::invalid("--in", "required"))?;
    let tol = match a.tol {
        Some(t) => t,
        None => ctx.config.run("tolerance")?.unwrap_or(DEFAULT_TOL),
    };
    if !(tol > 0.0) {
        return Err(CliError::invalid("tol", "must be > 0"));
    }
    let sinogram = Sinogram::parse(&read_text(&input)?).key("in")?;
    ctx.emit(&support_recover(&sinogram, tol).to_text(ctx.gnuplot()))
}

fn tower(ctx: &Ctx, a: TowerArgs) -> CliResult<()> {
    let phi = functional("phi", &ctx.require(a.phi, "tower", "phi")?)?;
    let x = CoordVec::parse(&ctx.require(a.x, "tower", "x")?).key("x")?;
    let n_max = match ctx.pick(a.n_max, "tower", "n_max")? {
        Some(0) => return Err(CliError::invalid("n_max", "must be positive")),
        Some(n) => n,
        None => phi.max_index().max(x.max_index()).max(1) + 2,
    };
    let target = phi.evaluate(&x);
    let mut table = Table::new(["n", "re", "im", "deviation"]);
    for n in 1..=n_max {
        let v = f_n_eval(&phi, &x, n);
        table.push(vec![n.to_string(), format_f64(v.re), format_f64(v.im), format_f64((v - target).norm())]);
    }
    ctx.emit(&table.render(ctx.format))
}

fn ballmass(ctx: &Ctx, a: BallmassArgs) -> CliResult<()> {
    let p = ctx.pick(a.p, "ballmass", "p")?.unwrap_or(1);
    let center = match ctx.pick(a.center, "ballmass", "center")? {
        Some(c) => CoordVec::parse(&c).key("center")?,
        None => CoordVec::zero(),
    };
    let radius = ctx.pick(a.radius, "ballmass", "radius")?.unwrap_or(1.0);
    let ball = DualBall::new(p, center, radius).key("radius")?;
    let dims: Vec<usize> = ctx
        .pick(a.dims, "ballmass", "dims")?
        .unwrap_or_else(|| "1,10,50".into())
        .split(',')
        .map(|d| d.trim().parse::<usize>().ok().filter(|&d| d > 0).ok_or_else(|| CliError::invalid("dims", format!("bad dimension `{d}`"))))
        .collect::<CliResult<_>>()?;
    let (count, seed) = (ctx.samples(&a.sampling)?, ctx.seed(&a.sampling)?);
    let mut table = Table::new(["truncation_dim", "estimate", "stderr", "count"]);
    for d in dims {
        let m = ball_mass_estimate(&ball, &ctx.schedule, d, count, seed).key("dims")?;
        table.push(vec![d.to_string(), format_f64(m.estimate), format_f64(m.stderr), m.count.to_string()]);
    }
    ctx.emit(&table.render(ctx.format))
}

fn basis_dump(ctx: &Ctx, n: Option<usize>, grid: Option<String>) -> CliResult<()> {
    let n: usize = ctx.require(n, "basis", "n")?;
    let grid = parse_grid(&ctx.require(grid, "basis", "grid")?).key("grid")?;
    let basis = HermiteBasis::new(n).key("n")?;
    let mut table = Table::new(std::iter::once("t".to_string()).chain((1..=n).map(|k| format!("phi_{k}"))));
    for t in grid {
        let mut row = vec![format_f64(t)];
        row.extend(basis.eval_all(t).into_iter().map(format_f64));
        table.push(row);
    }
    ctx.emit(&table.render(ctx.format))
}

fn measure_sample(ctx: &Ctx, subspace: Option<String>, s: SamplingArgs) -> CliResult<()> {
    let space = parse_subspace("subspace", &ctx.require(subspace, "measure", "subspace")?)?.affine();
    let dim = ctx.truncation(&s, space.block_dim())?;
    let count = ctx.samples(&s)?;
    let sampler = GaussianSampler::new(space, dim, ctx.seed(&s)?).key("dim")?;
    let block = sampler.sample_block(usize::try_from(count).map_err(|_| CliError::invalid("n", "too large"))?);
    let mut table = Table::new((1..=dim).map(|k| format!("x{k}")));
    for row in block.rows() {
        table.push(row.iter().copied().map(format_f64).collect());
    }
    ctx.emit(&table.render(ctx.format))
}
