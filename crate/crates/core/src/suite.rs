//! Runs the verification suites for one configuration and collects a report.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::ext::{
    associativity_check, complexity_estimate, e2_column_check, k2_spanning_check, lift_independence_check,
    named_generators, nilpotency_check, relations_for, verify_appendix_maps, verify_appendix_maps_n2,
    verify_relations, Convention, ExtContext, NamedGenerators,
};
use crate::qalgebra::{Algebra, AlgebraMode};
use crate::report::{Check, ConfigEcho, Report};
use crate::resolution::{
    build_minimal_segment, build_p_complex, build_resolution_n2, complex_from_json, is_minimal, scalar_entries,
    verify_complex, verify_dtilde_cases, verify_exactness, ExactnessStatus, FreeComplex,
};
use crate::scalars::{with_field, Field, FieldSpec, FieldVisitor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Complex,
    Exact,
    Dtilde,
    Appendix,
    Relations,
    E2,
    K2,
    Ext,
    Products,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "complex" => Suite::Complex,
            "exact" => Suite::Exact,
            "dtilde" => Suite::Dtilde,
            "appendix" => Suite::Appendix,
            "relations" => Suite::Relations,
            "e2" => Suite::E2,
            "k2" => Suite::K2,
            "ext" => Suite::Ext,
            "products" => Suite::Products,
            "all" => Suite::All,
            _ => {
                return Err(Error::Parse(format!(
                    "unknown suite {s:?}; expected complex, exact, dtilde, appendix, relations, e2, k2, ext, products or all"
                )))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Complex => "complex",
            Suite::Exact => "exact",
            Suite::Dtilde => "dtilde",
            Suite::Appendix => "appendix",
            Suite::Relations => "relations",
            Suite::E2 => "e2",
            Suite::K2 => "k2",
            Suite::Ext => "ext",
            Suite::Products => "products",
            Suite::All => "all",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Info,
    Verify(Suite),
    ExtDims,
}

/// A validated run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n: usize,
    pub field: FieldSpec,
    pub q12_exp: i64,
    pub mode: AlgebraMode,
    pub n_max: usize,
    pub convention: Convention,
    pub deterministic: bool,
    /// Replaces the built resolution by one read from a JSON file.
    pub complex: Option<PathBuf>,
}

impl RunConfig {
    /// Defaults for `N`: a prime field above 1000 containing the `N`-th roots
    /// of unity, `q12 = ζ`, full mode and the standard truncation degree.
    pub fn new(n: usize) -> Self {
        RunConfig {
            n,
            field: FieldSpec::prime_field_at_least(n.max(2) as u64, 1000),
            q12_exp: 1,
            mode: AlgebraMode::Full,
            n_max: default_n_max(n),
            convention: Convention::LeftThenRight,
            deterministic: false,
            complex: None,
        }
    }

    pub fn echo(&self, command: Command) -> ConfigEcho {
        let (command, suite) = match command {
            Command::Info => ("info", String::new()),
            Command::Verify(s) => ("verify", s.to_string()),
            Command::ExtDims => ("ext-dims", String::new()),
        };
        ConfigEcho {
            command: command.to_string(),
            n: self.n,
            field: self.field.to_string(),
            q12_exp: self.q12_exp,
            mode: self.mode.to_string(),
            n_max: self.n_max,
            convention: self.convention.to_string(),
            suite,
            complex: self.complex.as_ref().map(|p| p.display().to_string()),
        }
    }
}

pub fn default_n_max(n: usize) -> usize {
    match n {
        2 => 10,
        3 => 8,
        _ => 6,
    }
}

/// `dim Ext^n` predicted in closed form.
pub fn closed_form_dimension(n: usize, mode: AlgebraMode, degree: usize) -> usize {
    let k = degree;
    if n == 2 {
        k + 1
    } else if mode == AlgebraMode::Graded {
        (k + 1) * (k + 2) / 2
    } else if k % 2 == 1 {
        (3 * k * k + 8 * k + 5) / 8
    } else {
        (3 * k * k + 10 * k + 8) / 8
    }
}

/// Fails with a configuration error if the algebra cannot be built.
pub fn validate(config: &RunConfig) -> Result<()> {
    struct V<'a>(&'a RunConfig);
    impl FieldVisitor for V<'_> {
        type Output = Result<()>;
        fn visit<F: Field>(self, field: F) -> Result<()> {
            Algebra::from_exponents(field, self.0.n, self.0.q12_exp, self.0.mode).map(|_| ())
        }
    }
    if config.n_max < 1 {
        return Err(Error::InvalidParams("n_max must be at least 1".into()));
    }
    with_field(&config.field, V(config))?
}

/// Runs `command`. Configuration problems are returned as errors; failed
/// checks are recorded in the report.
pub fn run(config: &RunConfig, command: Command) -> Result<Report> {
    validate(config)?;
    let start = Instant::now();
    struct V<'a>(&'a RunConfig, Command);
    impl FieldVisitor for V<'_> {
        type Output = Result<Report>;
        fn visit<F: Field>(self, field: F) -> Result<Report> {
            let alg = Algebra::from_exponents(field, self.0.n, self.0.q12_exp, self.0.mode)?;
            Runner { config: self.0, alg: &alg }.run(self.1)
        }
    }
    let mut report = with_field(&config.field, V(config, command))??;
    report.warnings = config.field.warnings();
    report.timing_ms = if config.deterministic { 0 } else { start.elapsed().as_millis() as u64 };
    Ok(report)
}

struct Runner<'a, F: Field> {
    config: &'a RunConfig,
    alg: &'a Algebra<F>,
}

fn record(report: &mut Report, name: &str, outcome: Result<(bool, String)>) {
    report.push(match outcome {
        Ok((passed, details)) => Check::new(name, passed, details),
        Err(e) => Check::new(name, false, format!("error: {e}")),
    });
}

fn list<T: fmt::Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

impl<'a, F: Field> Runner<'a, F> {
    fn full_pbw(&self) -> bool {
        self.config.n >= 3 && self.config.mode == AlgebraMode::Full
    }

    /// `dim Ext^n` for `n <= n_max`.
    fn dims(&self, ctx: &ExtContext<'_, F>) -> Result<Vec<usize>> {
        let mut dims = ctx.ext_dimensions()?;
        dims.truncate(self.config.n_max + 1);
        Ok(dims)
    }

    fn resolution(&self) -> Result<FreeComplex<F::Elem>> {
        if let Some(path) = &self.config.complex {
            let text = std::fs::read_to_string(path)?;
            return complex_from_json(self.alg, &text);
        }
        let top = self.config.n_max + 1;
        if self.config.n == 2 {
            build_resolution_n2(self.alg, top)
        } else {
            build_p_complex(self.alg, top)
        }
    }

    fn run(&self, command: Command) -> Result<Report> {
        let mut report = Report::new(self.config.echo(command));
        match command {
            Command::Info => self.info(&mut report),
            Command::ExtDims => {
                let res = self.resolution()?;
                let ctx = ExtContext::new(self.alg, &res);
                self.ext_checks(&ctx, None, &mut report)?;
            }
            Command::Verify(suite) => self.verify(suite, &mut report)?,
        }
        Ok(report)
    }

    fn info(&self, report: &mut Report) {
        let alg = self.alg;
        let n = alg.n();
        let expected = if n == 2 { 8 } else { n * n * n };
        report.push(Check::new(
            "info.dimension",
            alg.dim() == expected,
            format!(
                "dim R = {}, qbar = {}, q12 = {}, q21 = {}",
                alg.dim(),
                alg.field().render(alg.qbar()),
                alg.field().render(alg.q12()),
                alg.field().render(alg.q21())
            ),
        ));
        if self.full_pbw() {
            report.push(Check::new(
                "info.reverse_basis",
                alg.reverse_basis_is_basis(),
                "x2^c y^b x1^a spans R",
            ));
        } else {
            report.push(Check::skipped("info.reverse_basis", "only for the full algebra with N >= 3"));
        }
    }

    fn verify(&self, suite: Suite, report: &mut Report) -> Result<()> {
        let res = self.resolution()?;
        let ctx = ExtContext::new(self.alg, &res);
        let segment = if self.full_pbw() { Some(build_minimal_segment(self.alg)?) } else { None };
        let seg_ctx = segment.as_ref().map(|s| ExtContext::new(self.alg, s));
        let minimal_ctx = if self.config.n == 2 && self.config.complex.is_none() {
            Some(&ctx)
        } else {
            seg_ctx.as_ref()
        };

        if suite.includes(Suite::Complex) {
            self.complex_checks(&res, segment.as_ref(), report);
        }
        if suite.includes(Suite::Exact) {
            self.exact_checks(&res, segment.as_ref(), report);
        }
        if suite.includes(Suite::Dtilde) {
            if self.full_pbw() {
                record(
                    report,
                    "dtilde.cases",
                    verify_dtilde_cases(self.alg, self.config.n_max).map(|r| {
                        let bad: Vec<String> =
                            r.cases.iter().filter(|c| !c.matches).map(|c| format!("{:?}", c.generator)).collect();
                        (r.passed(), format!("{} generators checked, mismatches {}", r.cases.len(), list(&bad)))
                    }),
                );
            } else {
                report.push(Check::skipped("dtilde.cases", "right division by y only occurs for the full algebra"));
            }
        }
        if suite.includes(Suite::Appendix) {
            let outcome = match (&segment, self.config.n) {
                (Some(seg), _) => Some(verify_appendix_maps(self.alg, seg)),
                (None, 2) => Some(build_resolution_n2(self.alg, 3).and_then(|c| verify_appendix_maps_n2(self.alg, &c))),
                _ => None,
            };
            match outcome {
                Some(r) => record(
                    report,
                    "appendix.maps",
                    r.map(|r| {
                        (
                            r.passed(),
                            format!(
                                "{} squares, {} identities, failing {}",
                                r.squares.len(),
                                r.identities.len(),
                                list(&r.failures())
                            ),
                        )
                    }),
                ),
                None => report.push(Check::skipped("appendix.maps", "no explicit maps for the graded algebra")),
            }
        }
        if suite.includes(Suite::Relations) {
            match minimal_ctx {
                Some(mctx) => self.relation_checks(&ctx, mctx, segment.as_ref(), report),
                None => report.push(Check::skipped("relations.presentation", "presentation is stated for R, not Gr R")),
            }
        }
        if suite.includes(Suite::E2) {
            if self.full_pbw() {
                let dims = self.dims(&ctx);
                record(
                    report,
                    "e2.columns",
                    dims.map(|d| {
                        let r = e2_column_check(&d);
                        let sums: Vec<usize> = r.columns.iter().map(|c| c.column_sum).collect();
                        (r.passed(), format!("column sums {}", list(&sums)))
                    }),
                );
            } else {
                report.push(Check::skipped("e2.columns", "E2 bookkeeping applies to N >= 3, full mode"));
            }
        }
        if suite.includes(Suite::K2) {
            record(
                report,
                "k2.spanning",
                k2_spanning_check(&ctx, self.config.n_max).map(|r| {
                    let spanned: Vec<String> =
                        r.degrees.iter().map(|d| format!("{}/{}", d.spanned_dim, d.ext_dim)).collect();
                    (r.passed(), format!("spanned per degree {}", list(&spanned)))
                }),
            );
        }
        if suite.includes(Suite::Ext) {
            self.ext_checks(&ctx, seg_ctx.as_ref(), report)?;
        } else {
            report.ext_dims = self.dims(&ctx)?;
        }
        if suite.includes(Suite::Products) {
            self.product_checks(&ctx, minimal_ctx, segment.as_ref(), report);
        }
        Ok(())
    }

    fn complex_checks(&self, res: &FreeComplex<F::Elem>, seg: Option<&FreeComplex<F::Elem>>, report: &mut Report) {
        record(
            report,
            "complex.d_squared",
            verify_complex(self.alg, res).map(|r| {
                (
                    r.passed(),
                    if r.passed() {
                        format!("∂∂ = 0 in degrees 2..={}", res.top_degree())
                    } else {
                        format!("nonzero ∂∂ in degrees {}", list(&r.failing_degrees()))
                    },
                )
            }),
        );
        if let Some(seg) = seg {
            record(
                report,
                "complex.segment_d_squared",
                verify_complex(self.alg, seg).map(|r| (r.passed(), format!("degrees {}", list(&r.checked_degrees)))),
            );
        }
        if self.full_pbw() && self.config.complex.is_none() {
            let scalars = scalar_entries(self.alg, res);
            report.push(Check::new(
                "complex.p_nonminimal",
                scalars.iter().any(|&(d, _, _)| d >= 2),
                format!("{} scalar entries", scalars.len()),
            ));
        }
    }

    fn exact_checks(&self, res: &FreeComplex<F::Elem>, seg: Option<&FreeComplex<F::Elem>>, report: &mut Report) {
        let ex = verify_exactness(self.alg, res);
        let bad: Vec<usize> =
            ex.degrees.iter().filter(|d| d.status == ExactnessStatus::NotExact).map(|d| d.degree).collect();
        report.push(Check::new(
            "exact.resolution",
            ex.passed(),
            format!(
                "kernel dims {}, not exact at {}, degree {} boundary",
                list(&ex.kernel_dims()),
                list(&bad),
                res.top_degree()
            ),
        ));
        if self.config.n == 2 && self.config.complex.is_none() {
            let ok = ex.degrees.iter().filter(|d| d.degree >= 1).all(|d| {
                let n = d.degree;
                d.kernel_dim == if n % 2 == 1 { 4 * n + 5 } else { 4 * n + 7 }
            });
            report.push(Check::new("exact.n2_kernel_dims", ok, "dim ker d_n = 4n+5 (odd), 4n+7 (even)"));
        }
        if let Some(seg) = seg {
            let sx = verify_exactness(self.alg, seg);
            report.push(Check::new(
                "exact.segment",
                sx.passed(),
                format!("kernel dims {}", list(&sx.kernel_dims())),
            ));
            report.push(Check::new(
                "exact.segment_minimal",
                is_minimal(self.alg, seg),
                "every entry has zero augmentation",
            ));
        }
        if self.config.mode == AlgebraMode::Graded || self.config.n == 2 {
            report.push(Check::new(
                "exact.minimal",
                is_minimal(self.alg, res),
                "every entry has zero augmentation",
            ));
        }
    }

    fn ext_checks(
        &self,
        ctx: &ExtContext<'_, F>,
        seg_ctx: Option<&ExtContext<'_, F>>,
        report: &mut Report,
    ) -> Result<()> {
        let dims = self.dims(ctx)?;
        let expected: Vec<usize> =
            (0..dims.len()).map(|k| closed_form_dimension(self.config.n, self.config.mode, k)).collect();
        report.push(Check::new(
            "ext.closed_form",
            dims == expected,
            format!("computed {}, closed form {}", list(&dims), list(&expected)),
        ));
        let want = if self.config.n == 2 { 2 } else { 3 };
        match complexity_estimate(&dims) {
            Ok(c) => report.push(Check::new("ext.complexity", c == want, format!("estimate {c}, expected {want}"))),
            Err(e) => report.push(Check::skipped("ext.complexity", e.to_string())),
        }
        if let Some(sctx) = seg_ctx {
            let sd = sctx.ext_dimensions()?;
            let k = sd.len().min(dims.len());
            report.push(Check::new(
                "ext.segment_agreement",
                sd[..k] == dims[..k],
                format!("segment {}, resolution {}", list(&sd), list(&dims[..k])),
            ));
        }
        report.ext_dims = dims;
        Ok(())
    }

    fn transferred(
        &self,
        ctx: &ExtContext<'_, F>,
        seg: &FreeComplex<F::Elem>,
        gens: &NamedGenerators<F::Elem>,
    ) -> Result<NamedGenerators<F::Elem>> {
        let g = ctx.comparison_map(seg, 4.min(ctx.max_degree()))?;
        let classes: Vec<_> = gens.classes.iter().filter(|c| c.degree <= g.steps()).cloned().collect();
        let moved = ctx.transfer_from_minimal(&g, &classes)?;
        Ok(NamedGenerators { names: gens.names[..moved.len()].to_vec(), classes: moved })
    }

    fn relation_checks(
        &self,
        ctx: &ExtContext<'_, F>,
        mctx: &ExtContext<'_, F>,
        seg: Option<&FreeComplex<F::Elem>>,
        report: &mut Report,
    ) {
        let conv = self.config.convention;
        let outcome = named_generators(mctx).and_then(|g| verify_relations(mctx, &g, &relations_for(self.config.n), conv));
        record(
            report,
            "relations.presentation",
            outcome.map(|r| {
                let retried: Vec<String> = r
                    .outcomes
                    .iter()
                    .filter(|o| !o.holds)
                    .map(|o| match o.validating_convention {
                        Some(c) => format!("{} (holds under {c})", o.name),
                        None => format!("{} (holds under neither)", o.name),
                    })
                    .collect();
                (
                    r.passed(),
                    format!("{} relations under convention {conv}, failing {}", r.outcomes.len(), list(&retried)),
                )
            }),
        );
        if let (Some(seg), true) = (seg, self.config.n > 3) {
            let outcome = named_generators(mctx)
                .and_then(|g| self.transferred(ctx, seg, &g))
                .and_then(|g| nilpotency_check(ctx, &g, self.config.n_max, conv));
            record(
                report,
                "relations.nilpotency",
                outcome.map(|r| {
                    let bad: Vec<&str> = r.entries.iter().filter(|e| !e.holds).map(|e| e.name.as_str()).collect();
                    (r.passed(), format!("{} statements, failing {}", r.entries.len(), list(&bad)))
                }),
            );
        }
    }

    fn product_checks(
        &self,
        ctx: &ExtContext<'_, F>,
        mctx: Option<&ExtContext<'_, F>>,
        seg: Option<&FreeComplex<F::Elem>>,
        report: &mut Report,
    ) {
        let gens = match (mctx, seg) {
            (Some(m), Some(s)) => named_generators(m).and_then(|g| self.transferred(ctx, s, &g)),
            (Some(m), None) => named_generators(m),
            _ => {
                // generic bases in degrees one and two
                let mut names = Vec::new();
                let mut classes = Vec::new();
                for d in 1..=2.min(ctx.max_degree()) {
                    for c in ctx.cocycle_basis(d).unwrap_or_default() {
                        names.push(if d == 1 { "u" } else { "v" });
                        classes.push(c);
                    }
                }
                Ok(NamedGenerators { names, classes })
            }
        };
        let gens = match gens {
            Ok(g) => g,
            Err(e) => {
                record(report, "products.associativity", Err(e));
                return;
            }
        };
        record(
            report,
            "products.associativity",
            associativity_check(ctx, &gens).map(|r| {
                (r.passed(), format!("{} triples, {} failures", r.triples_checked, r.failures.len()))
            }),
        );
        record(
            report,
            "products.lift_independence",
            lift_independence_check(ctx, &gens, self.config.convention)
                .map(|r| (r.passed(), format!("{} pairs, {} failures", r.pairs_checked, r.failures.len()))),
        );
    }
}
