use rayon::prelude::*;
use rug::{Complex, Float, Rational};

use expores::mpcore::log10_abs;
use expores::rpm::{
    all_roots, classify_roots, convergence_curve, hankel_symbolic_with_limit, newton_polish, CurveTarget, ExpSign,
    HankelSpec, PotentialSeries, RpmRoot,
};
use expores::spectra::{
    barrier_roots, bound_states, compare_with_barrier, geometric_grid, sweep, well_resonances, RootKind,
    SpectralRoot, SweepTarget,
};
use expores::{Error, PrecisionContext};

use crate::args::{Command, Dims, KindArg, LambdaArgs, Label, Metric, Seed};
use crate::output::{delta_text, lambda_text, status_of, Record};

/// Whole-run failures. Per-job failures become record statuses instead.
#[derive(Debug)]
pub enum RunError {
    /// Exit code 3.
    Invalid(String),
    /// Exit code 2.
    Failed(String),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::ResourceLimit { .. }
            | Error::WorkingPrecision(_)
            | Error::GuardDigits(_)
            | Error::ArgumentOutOfRange(_) => RunError::Invalid(e.to_string()),
            other => RunError::Failed(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub digits: u32,
    /// Tabulated orientation: resonances conjugated, user sheet m = solver sheet -m.
    pub printed: bool,
}

impl Settings {
    /// Maps a user sheet index to the solver's and back.
    fn sheet(&self, m: i64) -> i64 {
        if self.printed {
            -m
        } else {
            m
        }
    }

    /// Barrier roots are conjugated in the tabulated orientation; well roots
    /// are handled through [`Settings::sheet`].
    fn barrier(&self, z: &Complex) -> Complex {
        if self.printed {
            z.clone().conj()
        } else {
            z.clone()
        }
    }
}

/// Working precision of the most demanding job, for the metadata block.
pub fn working_digits(command: &Command, digits: u32) -> u32 {
    let dimension = match command {
        Command::RpmRoots { dimension, .. } => *dimension,
        Command::RpmPolish { dims, .. } | Command::Converge { dims, .. } => dims.0.last().copied().unwrap_or(0),
        _ => 0,
    };
    PrecisionContext::for_output(digits, dimension as u32).working_digits()
}

pub fn run(command: &Command, s: Settings) -> Result<Vec<Record>, RunError> {
    match command {
        Command::Spectrum { lambda, kind, m, count } => spectrum(lambda, *kind, *m, *count, s),
        Command::RpmRoots {
            lambda,
            dimension,
            d,
            symbolic_limit,
        } => rpm_roots(lambda, *dimension, *d, *symbolic_limit, s),
        Command::RpmPolish { lambda, dims, d, seed } => rpm_polish(lambda, dims, *d, seed, s),
        Command::Compare {
            lambda,
            m,
            count,
            metric,
        } => compare(lambda, m, *count, *metric, s),
        Command::Converge { lambda, target, dims, d } => converge(lambda, target, dims, *d, s),
    }
}

fn float(x: &Rational, ctx: &PrecisionContext) -> Float {
    Float::with_val(ctx.prec(), x)
}

fn lambda_grid(args: &LambdaArgs, ctx: &PrecisionContext) -> Result<Vec<Float>, RunError> {
    match (&args.lambda, &args.lambda_range) {
        (Some(l), _) => Ok(vec![float(l, ctx)]),
        (None, Some(r)) => Ok(geometric_grid(&float(&r.min, ctx), &float(&r.max, ctx), r.steps)?),
        (None, None) => Err(RunError::Invalid("one of --lambda or --lambda-range is required".into())),
    }
}

fn spectral_record(command: &'static str, root: &SpectralRoot, user_m: Option<i64>, s: Settings) -> Record {
    let order = match root.kind {
        RootKind::Barrier => s.barrier(&root.order),
        _ => root.order.clone(),
    };
    let mut r = Record::new(command, lambda_text(&root.lambda)).value(&order, s.digits);
    r.kind = Some(root.kind.as_str());
    r.m = user_m;
    r.n = Some(root.n);
    r
}

fn spectrum(lambda: &LambdaArgs, kind: KindArg, m: Option<i64>, count: usize, s: Settings) -> Result<Vec<Record>, RunError> {
    let ctx = PrecisionContext::for_output(s.digits, 0);
    let user_m = match (kind, m) {
        (KindArg::Well, Some(0)) | (KindArg::Well, None) => {
            return Err(RunError::Invalid("--kind well needs a nonzero --m".into()))
        }
        (KindArg::Well, Some(m)) => Some(m),
        (_, Some(_)) => return Err(RunError::Invalid("--m applies only to --kind well".into())),
        (_, None) => None,
    };
    if count == 0 {
        return Err(RunError::Invalid("--count must be at least 1".into()));
    }
    let target = match kind {
        KindArg::Barrier => SweepTarget::Barrier,
        KindArg::Bound => SweepTarget::Bound,
        KindArg::Well => SweepTarget::Well(s.sheet(user_m.unwrap())),
    };
    if let Some(range) = &lambda.lambda_range {
        let records = sweep(&float(&range.min, &ctx), &float(&range.max, &ctx), range.steps, &[target], count, &ctx)?;
        return Ok(records
            .iter()
            .map(|rec| {
                let mut r = spectral_record("spectrum", &rec.root, user_m, s);
                if rec.coalescence {
                    r.status = "coalescence".into();
                }
                r
            })
            .collect());
    }
    let lam = lambda_grid(lambda, &ctx)?.remove(0);
    let roots = match target {
        SweepTarget::Barrier => barrier_roots(&lam, count, &ctx)?,
        SweepTarget::Bound => bound_states(&lam, count, &ctx)?,
        SweepTarget::Well(sheet) => well_resonances(&lam, sheet, count, &ctx)?,
    };
    Ok(roots.iter().map(|root| spectral_record("spectrum", root, user_m, s)).collect())
}

fn potential(lambda: &Rational) -> PotentialSeries {
    PotentialSeries::exponential(lambda.clone(), ExpSign::Minus, 0)
}

fn rpm_roots(lambda: &Rational, dimension: usize, d: i64, limit: usize, s: Settings) -> Result<Vec<Record>, RunError> {
    let spec = HankelSpec::new(dimension, d)?;
    let poly = hankel_symbolic_with_limit(&potential(lambda), spec, limit)?;
    let ctx = PrecisionContext::for_output(s.digits, dimension as u32);
    let found = all_roots(&poly, &ctx)?;
    let roots: Vec<RpmRoot> = found.iter().map(|r| RpmRoot::from_poly_root(spec, r)).collect();
    let exact_ctx = PrecisionContext::for_output(s.digits, 0);
    let classified = classify_roots(&roots, &float(lambda, &exact_ctx), &exact_ctx)?;
    let lambda_str = lambda_text(&float(lambda, &exact_ctx));
    Ok(classified
        .iter()
        .zip(&found)
        .map(|(root, poly_root)| {
            let mut r = Record::new("rpm-roots", lambda_str.clone()).value(&root.energy, s.digits);
            r.dimension = Some(dimension);
            r.d = Some(d);
            match &root.classification {
                Some(c) => {
                    r.kind = Some(c.kind.as_str());
                    r.m = (c.kind == RootKind::Well).then(|| s.sheet(c.m));
                    r.n = Some(c.n);
                    r.delta = Some(delta_text(-c.distance.log10()));
                }
                None => r.status = "unmatched".into(),
            }
            if !poly_root.converged {
                r.status = "no-convergence".into();
            }
            r
        })
        .collect())
}

/// Exact energy of a labelled eigenvalue in the selected orientation.
fn exact_energy(label: Label, lambda: &Float, ctx: &PrecisionContext, s: Settings) -> expores::Result<Complex> {
    let pick = |roots: Vec<SpectralRoot>, n: usize| roots.into_iter().nth(n).map(|r| r.energy);
    let energy = match label {
        Label::Barrier(n) => pick(barrier_roots(lambda, n + 1, ctx)?, n).map(|e| s.barrier(&e)),
        Label::Bound(n) => pick(bound_states(lambda, n + 1, ctx)?, n),
        Label::Well(m, n) => pick(well_resonances(lambda, s.sheet(m), n + 1, ctx)?, n),
    };
    energy.ok_or_else(|| Error::RootSearch(format!("fewer roots than requested for {label:?}")))
}

fn label_fields(r: &mut Record, label: Label) {
    let (kind, m, n) = match label {
        Label::Barrier(n) => ("barrier", None, n),
        Label::Bound(n) => ("bound", None, n),
        Label::Well(m, n) => ("well", Some(m), n),
    };
    r.kind = Some(kind);
    r.m = m;
    r.n = Some(n);
}

/// Exact energies must resolve differences well below the best Newton root.
fn target_context(dims: &Dims, digits: u32) -> PrecisionContext {
    let largest = dims.0.iter().copied().max().unwrap_or(0) as u32;
    PrecisionContext::for_output(digits + largest + 10, 0)
}

fn rpm_polish(lambda: &Rational, dims: &Dims, d: i64, seed: &Seed, s: Settings) -> Result<Vec<Record>, RunError> {
    let pot = potential(lambda);
    let exact_ctx = target_context(dims, s.digits);
    let lam = float(lambda, &exact_ctx);
    let (start, exact, label) = match seed {
        Seed::Label(label) => {
            let e = exact_energy(*label, &lam, &exact_ctx, s)?;
            (e.clone(), Some(e), Some(*label))
        }
        Seed::Raw(re, im) => (Complex::with_val(exact_ctx.prec(), (*re, *im)), None, None),
    };
    let lambda_str = lambda_text(&lam);
    let specs: Vec<HankelSpec> = dims.0.iter().map(|&dim| HankelSpec::new(dim, d)).collect::<Result<_, _>>()?;
    Ok(specs
        .par_iter()
        .map(|&spec| {
            let ctx = PrecisionContext::for_output(s.digits, spec.dimension as u32);
            let mut r = Record::new("rpm-polish", lambda_str.clone());
            if let Some(label) = label {
                label_fields(&mut r, label);
            }
            r.dimension = Some(spec.dimension);
            r.d = Some(d);
            match newton_polish(&pot, spec, &start, &ctx) {
                Ok(root) => {
                    r = r.value(&root.energy, s.digits);
                    if let Some(exact) = &exact {
                        let diff = Complex::with_val(exact.prec(), &root.energy - exact);
                        r.delta = Some(delta_text(-log10_abs(&diff)));
                    }
                }
                Err(e) => r.status = status_of(&e).into(),
            }
            r
        })
        .collect())
}

fn compare(lambda: &LambdaArgs, sheets: &[i64], count: usize, metric: Metric, s: Settings) -> Result<Vec<Record>, RunError> {
    if sheets.iter().any(|&m| m <= 0) {
        return Err(RunError::Invalid("--m values must be positive".into()));
    }
    if count == 0 {
        return Err(RunError::Invalid("--count must be at least 1".into()));
    }
    let ctx = PrecisionContext::for_output(s.digits, 0);
    let grid = lambda_grid(lambda, &ctx)?;
    let per_lambda: Vec<Vec<Record>> = grid
        .par_iter()
        .map(|lam| {
            let lambda_str = lambda_text(lam);
            let barrier = match barrier_roots(lam, count, &ctx) {
                Ok(roots) => roots,
                Err(e) => {
                    let mut r = Record::new("compare", lambda_str);
                    r.kind = Some("barrier");
                    r.status = status_of(&e).into();
                    return vec![r];
                }
            };
            let mut out = Vec::new();
            for mu in &barrier {
                out.push(spectral_record("compare", mu, None, s));
                for &m in sheets {
                    // the comparison pairs a barrier root and a sheet-m root of the
                    // same orientation, so conjugating both keeps the pairing
                    let mut r = Record::new("compare", lambda_str.clone());
                    r.kind = Some("well");
                    r.m = Some(m);
                    r.n = Some(mu.n);
                    match compare_with_barrier(mu, m, &ctx) {
                        Ok(c) => {
                            r = r.value(&s.barrier(&c.nu_star), s.digits);
                            r.delta = Some(delta_text(match metric {
                                Metric::Order => c.log_diff_order,
                                Metric::Energy => c.log_diff_energy,
                            }));
                        }
                        Err(e) => r.status = status_of(&e).into(),
                    }
                    out.push(r);
                }
            }
            out
        })
        .collect();
    Ok(per_lambda.into_iter().flatten().collect())
}

fn converge(lambda: &Rational, targets: &[Label], dims: &Dims, d: i64, s: Settings) -> Result<Vec<Record>, RunError> {
    let pot = potential(lambda);
    let exact_ctx = target_context(dims, s.digits);
    let lam = float(lambda, &exact_ctx);
    let lambda_str = lambda_text(&lam);
    let ctx = PrecisionContext::for_output(s.digits, 0);
    let mut out = Vec::new();
    for &label in targets {
        let energy = match exact_energy(label, &lam, &exact_ctx, s) {
            Ok(e) => e,
            Err(e) => {
                let mut r = Record::new("converge", lambda_str.clone());
                label_fields(&mut r, label);
                r.status = status_of(&e).into();
                out.push(r);
                continue;
            }
        };
        let target = CurveTarget {
            n: 0,
            m: None,
            energy,
        };
        let curve = convergence_curve(&pot, &target, &dims.0, d, &ctx)?;
        let mut rows: Vec<(usize, Record)> = Vec::new();
        for rec in &curve.records {
            let mut r = Record::new("converge", lambda_str.clone()).value(&rec.energy, s.digits);
            label_fields(&mut r, label);
            r.dimension = Some(rec.dimension);
            r.d = Some(d);
            r.delta = Some(delta_text(rec.delta));
            rows.push((rec.dimension, r));
        }
        for failure in &curve.failures {
            let mut r = Record::new("converge", lambda_str.clone());
            label_fields(&mut r, label);
            r.dimension = Some(failure.dimension);
            r.d = Some(d);
            r.status = status_of(&failure.error).into();
            rows.push((failure.dimension, r));
        }
        rows.sort_by_key(|(dim, _)| *dim);
        out.extend(rows.into_iter().map(|(_, r)| r));
    }
    Ok(out)
}
