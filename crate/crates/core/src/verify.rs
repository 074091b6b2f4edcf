//! Extremal statements as executable checks over censuses and α grids.
//!
//! Each check returns a [`TheoremReport`]. A check passes when its failure
//! list is empty; uniqueness claims require exactly one census member at the
//! extremum (within the tie band), isomorphic to the named graph, with the
//! runner-up separated by more than the strict band.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{sigma_unicyclic_floor, BoundContext, BoundKind};
use crate::census::{
    census, Census, Family, Filter, MAX_CONNECTED_ORDER, MAX_TREE_ORDER,
    MAX_UNICYCLIC_ORDER,
};
use crate::graph::graph6::{emit_graph6, parse_graph6};
use crate::graph::{canonical_form, canonical_labeling, families, CanonicalForm, DistanceProfile, Graph};
use crate::par::Exec;
use crate::report::{sig15, sig15_opt};
use crate::spectral::{radius_from_profile, spectral_radius, spectrum_from_profile, SpectralResult};
use crate::transforms::{random_instances, TransformKind};
use crate::{Alpha, Error, Result, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Exploratory run outside the stated hypothesis; never fails.
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub alpha: Alpha,
    pub graph6: String,
    #[serde(serialize_with = "sig15")]
    pub mu: f64,
    /// Gap to the runner-up (`None` for one-member censuses).
    #[serde(serialize_with = "sig15_opt")]
    pub margin: Option<f64>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub theorem_id: String,
    pub n_range: Vec<usize>,
    /// Extra parameters such as `delta=3` or the census family.
    pub params: String,
    pub alpha_grid: Vec<Alpha>,
    pub census_size: usize,
    pub verdict: Verdict,
    pub exploratory: bool,
    pub witnesses: Vec<Witness>,
    /// Smallest strict-inequality gap observed.
    #[serde(serialize_with = "sig15_opt")]
    pub margin: Option<f64>,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn new(id: &str, n: usize, params: String, alphas: &[Alpha], exploratory: bool) -> Self {
        TheoremReport {
            theorem_id: id.to_string(),
            n_range: vec![n],
            params,
            alpha_grid: alphas.to_vec(),
            census_size: 0,
            verdict: Verdict::Pass,
            exploratory,
            witnesses: Vec::new(),
            margin: None,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn observe_margin(&mut self, m: f64) {
        self.margin = Some(self.margin.map_or(m, |x| x.min(m)));
    }

    fn fail(&mut self, msg: String) {
        if self.exploratory {
            self.notes.push(msg);
        } else {
            self.failures.push(msg);
        }
    }

    /// Sets the verdict from the failure list.
    pub fn finish(mut self) -> Self {
        self.verdict = if self.exploratory {
            Verdict::Info
        } else if self.failures.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

/// One census member with its dense spectrum and power-iteration radius per α.
#[derive(Debug, Clone)]
pub struct Evaluated {
    pub graph: Graph,
    pub form: CanonicalForm,
    pub profile: DistanceProfile,
    pub spectra: Vec<SpectralResult>,
    pub power_mu: Vec<f64>,
}

impl Evaluated {
    pub fn new(graph: &Graph, form: CanonicalForm, alphas: &[Alpha], tol: &Tolerances) -> Result<Self> {
        let profile = DistanceProfile::new(graph)?;
        let mut spectra = Vec::with_capacity(alphas.len());
        let mut power_mu = Vec::with_capacity(alphas.len());
        for a in alphas {
            spectra.push(spectrum_from_profile(&profile, a.value(), tol)?);
            power_mu.push(radius_from_profile(&profile, a.value(), tol)?.mu);
        }
        Ok(Evaluated {
            graph: graph.clone(),
            form,
            profile,
            spectra,
            power_mu,
        })
    }
}

/// Worst-case numerical diagnostics over a set of spectral computations.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Numerics {
    pub evaluations: usize,
    /// Largest `residual / (1 + T_max)`.
    #[serde(serialize_with = "sig15")]
    pub max_residual: f64,
    /// Largest `|Σλ − 2ασ| / (1 + 2ασ)`.
    #[serde(serialize_with = "sig15")]
    pub max_trace_error: f64,
    /// Largest `|μ_power − μ_dense| / μ_dense`.
    #[serde(serialize_with = "sig15")]
    pub max_power_disagreement: f64,
    /// Smallest `μ − λ_2`.
    #[serde(serialize_with = "sig15")]
    pub min_spectral_gap: f64,
}

pub const RESIDUAL_LIMIT: f64 = 1e-9;
pub const TRACE_LIMIT: f64 = 1e-8;
pub const POWER_LIMIT: f64 = 1e-8;

impl Numerics {
    fn empty() -> Self {
        Numerics {
            min_spectral_gap: f64::INFINITY,
            ..Default::default()
        }
    }

    fn absorb(&mut self, e: &Evaluated, alphas: &[Alpha]) {
        let scale = 1.0 + e.profile.t_max() as f64;
        for ((a, s), &pm) in alphas.iter().zip(&e.spectra).zip(&e.power_mu) {
            self.evaluations += 1;
            self.max_residual = self.max_residual.max(s.residual / scale);
            let want = 2.0 * a.value() * e.profile.sigma as f64;
            let got: f64 = s.eigenvalues.iter().sum();
            self.max_trace_error = self.max_trace_error.max((got - want).abs() / (1.0 + want));
            if s.mu > 0.0 {
                self.max_power_disagreement = self.max_power_disagreement.max((pm - s.mu).abs() / s.mu);
            }
            if let Some(g) = s.spectral_gap {
                self.min_spectral_gap = self.min_spectral_gap.min(g);
            }
        }
    }

    fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.max_residual > RESIDUAL_LIMIT {
            out.push(format!("eigen-residual {:e} exceeds {RESIDUAL_LIMIT:e}·(1+T_max)", self.max_residual));
        }
        if self.max_trace_error > TRACE_LIMIT {
            out.push(format!("trace error {:e} exceeds {TRACE_LIMIT:e}", self.max_trace_error));
        }
        if self.max_power_disagreement > POWER_LIMIT {
            out.push(format!(
                "power and dense radii differ by {:e} > {POWER_LIMIT:e}",
                self.max_power_disagreement
            ));
        }
        if self.min_spectral_gap <= 0.0 {
            out.push(format!("Perron root not simple (gap {:e})", self.min_spectral_gap));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Goal {
    Min,
    Max,
}

type Members = Arc<Vec<Evaluated>>;

/// Evaluates censuses once per `(family, n)` and runs checks against them.
pub struct Checker {
    alphas: Vec<Alpha>,
    tol: Tolerances,
    exec: Exec,
    cache: Mutex<BTreeMap<(u8, usize), Members>>,
}

fn family_key(f: Family) -> u8 {
    match f {
        Family::Trees => 0,
        Family::Unicyclic => 1,
        Family::Connected => 2,
        Family::Filtered => 3,
    }
}

fn precondition(msg: String) -> Error {
    Error::Precondition(msg)
}

fn g6(g: &Graph) -> String {
    emit_graph6(g)
}

impl Checker {
    pub fn new(alphas: Vec<Alpha>, tol: Tolerances, exec: Exec) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::Config("alpha grid is empty".into()));
        }
        tol.validate()?;
        Ok(Checker {
            alphas,
            tol,
            exec,
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, BTreeMap<(u8, usize), Members>> {
        self.cache.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn alphas(&self) -> &[Alpha] {
        &self.alphas
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    /// Evaluate every member of an arbitrary census (not cached).
    pub fn evaluate(&self, c: &Census) -> Result<Vec<Evaluated>> {
        let items: Vec<(&Graph, &CanonicalForm)> = c.graphs.iter().zip(c.forms()).collect();
        self.exec
            .map(&items, |(g, f)| Evaluated::new(g, (*f).clone(), &self.alphas, &self.tol))
            .into_iter()
            .collect()
    }

    /// Cached evaluation of a full family census.
    pub fn members(&self, family: Family, n: usize) -> Result<Members> {
        let key = (family_key(family), n);
        if let Some(m) = self.lock().get(&key) {
            return Ok(m.clone());
        }
        let c = census(family, n)?;
        let m = Arc::new(self.evaluate(&c)?);
        self.lock().insert(key, m.clone());
        Ok(m)
    }

    /// Every `(family, n)` evaluated so far.
    pub fn evaluated(&self) -> Vec<(Family, usize, Members)> {
        let fams = [Family::Trees, Family::Unicyclic, Family::Connected, Family::Filtered];
        self.lock()
            .iter()
            .map(|(&(k, n), m)| (fams[k as usize], n, m.clone()))
            .collect()
    }

    fn filtered(&self, family: Family, n: usize, filter: &Filter) -> Result<Vec<Evaluated>> {
        let all = self.members(family, n)?;
        let mut out = Vec::new();
        for e in all.iter() {
            if filter.accepts(&e.graph, &e.form)? {
                out.push(e.clone());
            }
        }
        Ok(out)
    }

    /// Unique-extremum check: per α, exactly one member within the tie band of
    /// the extremum, isomorphic to `expected`, and the runner-up strictly beyond.
    pub fn check_extremum(
        &self,
        report: &mut TheoremReport,
        members: &[Evaluated],
        goal: Goal,
        expected: &Graph,
    ) -> Result<()> {
        let want = canonical_form(expected)?;
        report.census_size = members.len();
        if members.is_empty() {
            report.fail("census is empty".into());
            return Ok(());
        }
        for (ai, alpha) in self.alphas.iter().enumerate() {
            let ext = extremum(members, ai, goal);
            let best = members[ext].spectra[ai].mu;
            let ties = members
                .iter()
                .filter(|e| (e.spectra[ai].mu - best).abs() <= self.tol.tie_band(best))
                .count();
            let margin = members
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != ext)
                .map(|(_, e)| match goal {
                    Goal::Min => e.spectra[ai].mu - best,
                    Goal::Max => best - e.spectra[ai].mu,
                })
                .reduce(f64::min);
            if let Some(m) = margin {
                report.observe_margin(m);
                if m <= self.tol.strict_band(best) {
                    report.fail(format!(
                        "alpha={alpha}: runner-up margin {m:e} within the strict band"
                    ));
                }
            }
            if ties > 1 {
                report.fail(format!("alpha={alpha}: {ties} members tie at the extremum {best}"));
            }
            let hit = &members[ext];
            if hit.form != want {
                report.fail(format!(
                    "alpha={alpha}: extremum attained by {} (mu={best}), expected {}",
                    g6(&hit.graph),
                    g6(expected)
                ));
            }
            report.witnesses.push(Witness {
                alpha: alpha.clone(),
                graph6: g6(&hit.graph),
                mu: best,
                margin,
                note: String::new(),
            });
        }
        Ok(())
    }

    /// Smallest `μ_α` over trees is attained only by the star.
    pub fn check_tree_min(&self, n: usize) -> Result<TheoremReport> {
        if n < 4 {
            return Err(precondition(format!("tree minimum needs n >= 4, got {n}")));
        }
        let mut r = TheoremReport::new("tree_min", n, "family=trees".into(), &self.alphas, false);
        let members = self.members(Family::Trees, n)?;
        self.check_extremum(&mut r, &members, Goal::Min, &families::star(n))?;
        Ok(r.finish())
    }

    /// Among trees other than the star, the minimizer is a double star `D_{n,a}`.
    pub fn check_tree_second_min(&self, n: usize) -> Result<TheoremReport> {
        if n < 5 {
            return Err(precondition(format!("tree second minimum needs n >= 5, got {n}")));
        }
        let mut r = TheoremReport::new("tree_second_min", n, "family=trees".into(), &self.alphas, false);
        let star = canonical_form(&families::star(n))?;
        let members: Vec<Evaluated> = self
            .members(Family::Trees, n)?
            .iter()
            .filter(|e| e.form != star)
            .cloned()
            .collect();
        r.census_size = members.len();
        let mut doubles = Vec::new();
        for a in 1..=(n - 2) / 2 {
            doubles.push((a, canonical_form(&families::double_star(n, a)?)?));
        }
        for (ai, alpha) in self.alphas.iter().enumerate() {
            let ext = extremum(&members, ai, Goal::Min);
            let hit = &members[ext];
            let best = hit.spectra[ai].mu;
            let margin = members
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != ext)
                .map(|(_, e)| e.spectra[ai].mu - best)
                .reduce(f64::min);
            let note = match doubles.iter().find(|(_, f)| *f == hit.form) {
                Some((a, _)) => format!("a={a}"),
                None => {
                    r.fail(format!(
                        "alpha={alpha}: second minimum {} is not a double star",
                        g6(&hit.graph)
                    ));
                    String::new()
                }
            };
            r.witnesses.push(Witness {
                alpha: alpha.clone(),
                graph6: g6(&hit.graph),
                mu: best,
                margin,
                note,
            });
        }
        Ok(r.finish())
    }

    /// Smallest `μ_α` over unicyclic graphs is attained only by `S_n^+` (n ≥ 8).
    /// Orders 3..=7 run in exploratory mode.
    pub fn check_unicyclic_min(&self, n: usize) -> Result<TheoremReport> {
        if n < 3 {
            return Err(precondition(format!("unicyclic census needs n >= 3, got {n}")));
        }
        let mut r = TheoremReport::new("unicyclic_min", n, "family=unicyclic".into(), &self.alphas, n < 8);
        let members = self.members(Family::Unicyclic, n)?;
        self.check_extremum(&mut r, &members, Goal::Min, &families::star_plus(n)?)?;
        Ok(r.finish())
    }

    /// Largest `μ_α` with maximum degree `Δ` is attained only by the broom `B_{n,Δ}`.
    pub fn check_max_degree_max(&self, n: usize, delta: usize, family: Family) -> Result<TheoremReport> {
        if n < 5 || delta < 2 || delta > n - 1 {
            return Err(precondition(format!(
                "max-degree check needs n >= 5 and 2 <= delta <= n-1, got n={n}, delta={delta}"
            )));
        }
        if !matches!(family, Family::Trees | Family::Connected) {
            return Err(Error::Config(format!("max-degree check runs on trees or connected, not {family}")));
        }
        let mut r = TheoremReport::new(
            "max_degree_max",
            n,
            format!("family={family},delta={delta}"),
            &self.alphas,
            false,
        );
        let members = self.filtered(family, n, &Filter::MaxDegree(delta))?;
        self.check_extremum(&mut r, &members, Goal::Max, &families::broom(n, delta)?)?;
        Ok(r.finish())
    }

    /// The path maximizes `μ_α`, the broom `B_{n,3}` is second, and the cycle
    /// sits strictly below the broom.
    pub fn check_global_max(&self, n: usize, family: Family) -> Result<TheoremReport> {
        if n < 4 {
            return Err(precondition(format!("global maximum needs n >= 4, got {n}")));
        }
        if !matches!(family, Family::Trees | Family::Connected) {
            return Err(Error::Config(format!("global maximum runs on trees or connected, not {family}")));
        }
        let mut r = TheoremReport::new("global_max", n, format!("family={family}"), &self.alphas, false);
        let members = self.members(family, n)?;
        let path = families::path(n);
        self.check_extremum(&mut r, &members, Goal::Max, &path)?;

        let pf = canonical_form(&path)?;
        let rest: Vec<Evaluated> = members.iter().filter(|e| e.form != pf).cloned().collect();
        let broom = families::broom(n, 3)?;
        let mut second = TheoremReport::new("", n, String::new(), &self.alphas, false);
        self.check_extremum(&mut second, &rest, Goal::Max, &broom)?;
        r.failures.extend(second.failures.into_iter().map(|f| format!("second maximum: {f}")));
        if let Some(m) = second.margin {
            r.observe_margin(m);
        }
        for w in &mut second.witnesses {
            w.note = "second".into();
        }
        r.witnesses.extend(second.witnesses);

        let cycle = families::cycle(n)?;
        for alpha in &self.alphas {
            let a = alpha.value();
            let mc = spectral_radius(&cycle, a, &self.tol)?.mu;
            let mb = spectral_radius(&broom, a, &self.tol)?.mu;
            let mp = spectral_radius(&path, a, &self.tol)?.mu;
            for (lo, hi, what) in [(mc, mb, "C_n < B_{n,3}"), (mb, mp, "B_{n,3} < P_n")] {
                r.observe_margin(hi - lo);
                if !self.tol.strictly_less(lo, hi) {
                    r.fail(format!("alpha={alpha}: {what} not strict ({lo} vs {hi})"));
                }
            }
        }
        Ok(r.finish())
    }

    /// Largest `μ_α` with clique number `ω` is attained only by the kite `Ki_{n,ω}`.
    pub fn check_clique_max(&self, n: usize, omega: usize) -> Result<TheoremReport> {
        if omega < 2 || omega > n {
            return Err(precondition(format!("clique check needs 2 <= omega <= n, got n={n}, omega={omega}")));
        }
        let mut r = TheoremReport::new(
            "clique_max",
            n,
            format!("family=connected,omega={omega}"),
            &self.alphas,
            false,
        );
        let members = self.filtered(Family::Connected, n, &Filter::Clique(omega))?;
        self.check_extremum(&mut r, &members, Goal::Max, &families::kite(n, omega)?)?;
        Ok(r.finish())
    }

    /// Largest `μ_α` over odd-cycle unicyclic graphs is attained only by `Ki_{n,3}`.
    pub fn check_odd_unicyclic_max(&self, n: usize) -> Result<TheoremReport> {
        if n < 3 {
            return Err(precondition(format!("odd-cycle check needs n >= 3, got {n}")));
        }
        let mut r = TheoremReport::new(
            "odd_unicyclic_max",
            n,
            "family=unicyclic,filter=odd_cycle".into(),
            &self.alphas,
            false,
        );
        let members = self.filtered(Family::Unicyclic, n, &Filter::OddCycle)?;
        self.check_extremum(&mut r, &members, Goal::Max, &families::kite(n, 3)?)?;
        Ok(r.finish())
    }

    /// Every bound holds on every member of a census at every α, iff equality
    /// conditions agree in both directions, and the gap bound is strict.
    pub fn check_bounds(&self, family: Family, n: usize) -> Result<TheoremReport> {
        let mut r = TheoremReport::new("bounds", n, format!("family={family}"), &self.alphas, false);
        let members = self.members(family, n)?;
        r.census_size = members.len();
        if n < 2 {
            return Ok(r.finish());
        }
        let findings = self.exec.map(&members, |e| self.bounds_on(e));
        let mut equalities = 0usize;
        for f in findings {
            let f = f?;
            r.failures.extend(f.failures);
            if let Some(m) = f.gap_margin {
                r.observe_margin(m);
            }
            equalities += f.equalities;
        }
        r.notes.push(format!("equality cases observed: {equalities}"));
        if family == Family::Unicyclic && n >= 6 {
            let sp = canonical_form(&families::star_plus(n)?)?;
            for e in members.iter().filter(|e| e.form != sp) {
                if !sigma_unicyclic_floor(&e.graph)? {
                    r.fail(format!("{}: sigma {} below n^2-n-4", g6(&e.graph), e.profile.sigma));
                }
            }
        }
        Ok(r.finish())
    }

    fn bounds_on(&self, e: &Evaluated) -> Result<BoundFindings> {
        let mut out = BoundFindings::default();
        for (alpha, s) in self.alphas.iter().zip(&e.spectra) {
            let ctx = BoundContext::with_spectrum(&e.graph, e.profile.clone(), alpha.value(), s.clone(), &self.tol);
            for b in ctx.all() {
                if b.equality_observed {
                    out.equalities += 1;
                }
                if b.kind == BoundKind::Gap {
                    out.gap_margin = Some(out.gap_margin.map_or(b.gap, |m: f64| m.min(b.gap)));
                }
                if !b.consistent() {
                    out.failures.push(format!(
                        "{} alpha={alpha}: {:?} value={} mu={} predicted_eq={} observed_eq={}",
                        g6(&e.graph),
                        b.name,
                        b.value,
                        b.mu,
                        b.equality_predicted,
                        b.equality_observed
                    ));
                }
            }
            let iv = ctx.nonmaximal_interval();
            if !iv.holds {
                out.failures.push(format!(
                    "{} alpha={alpha}: eigenvalue interval violated by {}",
                    g6(&e.graph),
                    iv.margin
                ));
            }
        }
        Ok(out)
    }

    /// Seeded random instances of one transformation, checked at every α.
    pub fn check_transform(&self, kind: TransformKind, count: usize, seed: u64, max_n: usize) -> Result<TheoremReport> {
        let instances = random_instances(kind, count, seed, max_n);
        let name = instances
            .first()
            .map(|i| i.transform.name())
            .unwrap_or("transform");
        let mut r = TheoremReport::new(
            &format!("transform_{name}"),
            max_n,
            format!("instances={count},seed={seed}"),
            &self.alphas,
            false,
        );
        r.n_range = (instances.iter().map(|i| i.graph.n()).min().unwrap_or(0)..=max_n).collect();
        r.census_size = instances.len();
        let results = self.exec.map(&instances, |inst| -> Result<(Vec<String>, f64)> {
            let applied = inst.transform.apply(&inst.graph)?;
            let mut fails = Vec::new();
            let mut margin = f64::INFINITY;
            for out in &applied.after {
                if out.n() != applied.before.n() {
                    fails.push(format!("{}: order changed", g6(&applied.before)));
                }
                if !out.is_connected() {
                    fails.push(format!("{}: output disconnected", g6(&applied.before)));
                }
            }
            for alpha in &self.alphas {
                let o = applied.outcome(alpha.value(), &self.tol)?;
                margin = margin.min(o.margin);
                if !o.claim_verified {
                    fails.push(format!(
                        "{} alpha={alpha}: claim {:?} not verified (margin {:e})",
                        g6(&applied.before),
                        o.direction_claim,
                        o.margin
                    ));
                }
            }
            Ok((fails, margin))
        });
        for res in results {
            let (fails, m) = res?;
            r.failures.extend(fails);
            r.observe_margin(m);
        }
        Ok(r.finish())
    }

    /// Numerical diagnostics over everything evaluated so far.
    pub fn check_numerics(&self) -> TheoremReport {
        let mut r = TheoremReport::new("numerics", 0, String::new(), &self.alphas, false);
        let mut num = Numerics::empty();
        let mut orders = BTreeSet::new();
        for (_, n, members) in self.evaluated() {
            orders.insert(n);
            r.census_size += members.len();
            for e in members.iter() {
                num.absorb(e, &self.alphas);
            }
        }
        r.n_range = orders.into_iter().collect();
        r.failures = num.violations();
        r.notes.push(serde_json::to_string(&num).unwrap_or_default());
        r.finish()
    }

    /// graph6 round trip on every evaluated member and non-isomorphism on a
    /// random sample of pairs per census.
    pub fn check_census_integrity(&self, seed: u64, pairs: usize) -> Result<TheoremReport> {
        let mut r = TheoremReport::new("census_integrity", 0, format!("pairs={pairs},seed={seed}"), &self.alphas, false);
        let mut orders = BTreeSet::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (family, n, members) in self.evaluated() {
            orders.insert(n);
            r.census_size += members.len();
            for e in members.iter() {
                let text = g6(&e.graph);
                if parse_graph6(&text)? != e.graph {
                    r.fail(format!("{family} n={n}: graph6 round trip changed {text}"));
                }
            }
            if members.len() < 2 {
                continue;
            }
            for _ in 0..pairs {
                let i = rng.random_range(0..members.len());
                let mut j = rng.random_range(0..members.len() - 1);
                if j >= i {
                    j += 1;
                }
                let colors = vec![0u32; n];
                let a = canonical_labeling(&members[i].graph, &colors)?.0;
                let b = canonical_labeling(&members[j].graph, &colors)?.0;
                if a == b {
                    r.fail(format!(
                        "{family} n={n}: members {} and {} are isomorphic",
                        g6(&members[i].graph),
                        g6(&members[j].graph)
                    ));
                }
            }
        }
        r.n_range = orders.into_iter().collect();
        Ok(r.finish())
    }
}

#[derive(Default)]
struct BoundFindings {
    failures: Vec<String>,
    gap_margin: Option<f64>,
    equalities: usize,
}

fn extremum(members: &[Evaluated], ai: usize, goal: Goal) -> usize {
    let mut best = 0;
    for (i, e) in members.iter().enumerate().skip(1) {
        let (x, y) = (e.spectra[ai].mu, members[best].spectra[ai].mu);
        let better = match goal {
            Goal::Min => x < y,
            Goal::Max => x > y,
        };
        if better {
            best = i;
        }
    }
    best
}

fn default_checker(alphas: &[Alpha]) -> Result<Checker> {
    Checker::new(alphas.to_vec(), Tolerances::default(), Exec::default())
}

pub fn check_tree_min(n: usize, alphas: &[Alpha]) -> Result<TheoremReport> {
    default_checker(alphas)?.check_tree_min(n)
}

pub fn check_tree_second_min(n: usize, alphas: &[Alpha]) -> Result<TheoremReport> {
    default_checker(alphas)?.check_tree_second_min(n)
}

pub fn check_unicyclic_min(n: usize, alphas: &[Alpha]) -> Result<TheoremReport> {
    default_checker(alphas)?.check_unicyclic_min(n)
}

pub fn check_max_degree_max(n: usize, delta: usize, family: Family, alphas: &[Alpha]) -> Result<TheoremReport> {
    default_checker(alphas)?.check_max_degree_max(n, delta, family)
}

pub fn check_global_max(n: usize, family: Family, alphas: &[Alpha]) -> Result<TheoremReport> {
    default_checker(alphas)?.check_global_max(n, family)
}

pub fn check_clique_max(n: usize, omega: usize, alphas: &[Alpha]) -> Result<TheoremReport> {
    default_checker(alphas)?.check_clique_max(n, omega)
}

pub fn check_odd_unicyclic_max(n: usize, alphas: &[Alpha]) -> Result<TheoremReport> {
    default_checker(alphas)?.check_odd_unicyclic_max(n)
}

/// Orders and switches for one suite run. Defaults reproduce the full
/// acceptance sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub alphas: Vec<Alpha>,
    pub tree_min: Vec<usize>,
    pub tree_second_min: Vec<usize>,
    pub unicyclic_min: Vec<usize>,
    pub unicyclic_exploratory: Vec<usize>,
    pub global_max_trees: Vec<usize>,
    pub global_max_connected: Vec<usize>,
    pub max_degree_trees: Vec<usize>,
    pub max_degree_connected: Vec<usize>,
    pub clique_max: Vec<usize>,
    pub odd_unicyclic_max: Vec<usize>,
    pub bounds: bool,
    pub transform_instances: usize,
    pub transform_max_n: usize,
    pub integrity_pairs: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            alphas: Alpha::default_grid(),
            tree_min: (4..=9).collect(),
            tree_second_min: (5..=9).collect(),
            unicyclic_min: vec![8, 9],
            unicyclic_exploratory: vec![5, 6, 7],
            global_max_trees: (4..=10).collect(),
            global_max_connected: (4..=7).collect(),
            max_degree_trees: (5..=10).collect(),
            max_degree_connected: (5..=7).collect(),
            clique_max: (4..=7).collect(),
            odd_unicyclic_max: (4..=9).collect(),
            bounds: true,
            transform_instances: 200,
            transform_max_n: 12,
            integrity_pairs: 100,
            seed: 1,
            tolerances: Tolerances::default(),
        }
    }
}

pub const MAX_TRANSFORM_ORDER: usize = 16;

impl SuiteConfig {
    /// An empty run: every list empty, bounds and transforms off.
    pub fn none() -> Self {
        SuiteConfig {
            tree_min: vec![],
            tree_second_min: vec![],
            unicyclic_min: vec![],
            unicyclic_exploratory: vec![],
            global_max_trees: vec![],
            global_max_connected: vec![],
            max_degree_trees: vec![],
            max_degree_connected: vec![],
            clique_max: vec![],
            odd_unicyclic_max: vec![],
            bounds: false,
            transform_instances: 0,
            ..Default::default()
        }
    }

    fn order_lists(&mut self) -> [(&mut Vec<usize>, usize); 10] {
        [
            (&mut self.tree_min, 4),
            (&mut self.tree_second_min, 5),
            (&mut self.unicyclic_min, 8),
            (&mut self.unicyclic_exploratory, 3),
            (&mut self.global_max_trees, 4),
            (&mut self.global_max_connected, 4),
            (&mut self.max_degree_trees, 5),
            (&mut self.max_degree_connected, 5),
            (&mut self.clique_max, 2),
            (&mut self.odd_unicyclic_max, 3),
        ]
    }

    /// Replace every non-empty order list by the given orders, dropping those
    /// below a check's minimum. Census caps are enforced by [`validate`](Self::validate).
    pub fn set_orders(&mut self, ns: &[usize]) {
        for (list, lo) in self.order_lists() {
            if !list.is_empty() {
                *list = ns.iter().copied().filter(|&n| n >= lo).collect();
            }
        }
        self.unicyclic_exploratory.retain(|&n| n < 8);
    }

    pub fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() {
            return Err(Error::Config("alpha grid is empty".into()));
        }
        self.tolerances.validate()?;
        let ranges: [(&str, &[usize], usize, usize); 10] = [
            ("tree_min", &self.tree_min, 4, MAX_TREE_ORDER),
            ("tree_second_min", &self.tree_second_min, 5, MAX_TREE_ORDER),
            ("unicyclic_min", &self.unicyclic_min, 8, MAX_UNICYCLIC_ORDER),
            ("unicyclic_exploratory", &self.unicyclic_exploratory, 3, MAX_UNICYCLIC_ORDER),
            ("global_max_trees", &self.global_max_trees, 4, MAX_TREE_ORDER),
            ("global_max_connected", &self.global_max_connected, 4, MAX_CONNECTED_ORDER),
            ("max_degree_trees", &self.max_degree_trees, 5, MAX_TREE_ORDER),
            ("max_degree_connected", &self.max_degree_connected, 5, MAX_CONNECTED_ORDER),
            ("clique_max", &self.clique_max, 2, MAX_CONNECTED_ORDER),
            ("odd_unicyclic_max", &self.odd_unicyclic_max, 3, MAX_UNICYCLIC_ORDER),
        ];
        for (name, ns, lo, cap) in ranges {
            for &n in ns {
                if n > cap {
                    return Err(Error::Config(format!("{name}: n={n} exceeds the census cap {cap}")));
                }
                if n < lo {
                    return Err(Error::Config(format!("{name}: n={n} is below the minimum {lo}")));
                }
            }
        }
        if self.transform_instances > 0 && !(6..=MAX_TRANSFORM_ORDER).contains(&self.transform_max_n) {
            return Err(Error::Config(format!(
                "transform_max_n={} outside 6..={MAX_TRANSFORM_ORDER} (cap {MAX_TRANSFORM_ORDER})",
                self.transform_max_n
            )));
        }
        Ok(())
    }

    fn census_orders(&self) -> BTreeSet<(u8, usize)> {
        let t = family_key(Family::Trees);
        let u = family_key(Family::Unicyclic);
        let c = family_key(Family::Connected);
        let mut s = BTreeSet::new();
        for &n in self.tree_min.iter().chain(&self.tree_second_min).chain(&self.global_max_trees).chain(&self.max_degree_trees) {
            s.insert((t, n));
        }
        for &n in self.unicyclic_min.iter().chain(&self.unicyclic_exploratory).chain(&self.odd_unicyclic_max) {
            s.insert((u, n));
        }
        for &n in self.global_max_connected.iter().chain(&self.max_degree_connected).chain(&self.clique_max) {
            s.insert((c, n));
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub reports: Vec<TheoremReport>,
}

impl SuiteReport {
    pub fn failing(&self) -> impl Iterator<Item = &TheoremReport> {
        self.reports.iter().filter(|r| !r.passed())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// One row per (report, witness): theorem_id, n, alpha, verdict, margin, witness.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Io(e.to_string());
        out.write_record(["theorem_id", "n", "params", "alpha", "verdict", "margin", "witness_graph6", "mu"])
            .map_err(io)?;
        for r in &self.reports {
            let n = r
                .n_range
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let verdict = match r.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::Info => "info",
            };
            let fmt = |x: Option<f64>| x.map(|v| crate::report::round_sig(v).to_string()).unwrap_or_default();
            if r.witnesses.is_empty() {
                out.write_record([&r.theorem_id, &n, &r.params, "", verdict, &fmt(r.margin), "", ""])
                    .map_err(io)?;
            }
            for w in &r.witnesses {
                out.write_record([
                    r.theorem_id.as_str(),
                    &n,
                    &r.params,
                    w.alpha.text(),
                    verdict,
                    &fmt(w.margin),
                    &w.graph6,
                    &fmt(Some(w.mu)),
                ])
                .map_err(io)?;
            }
        }
        out.flush()?;
        Ok(())
    }
}

/// Run every configured check plus the bounds, transform, numerics and
/// census-integrity sweeps.
pub fn run_suite(config: &SuiteConfig, exec: Exec) -> Result<SuiteReport> {
    config.validate()?;
    let ck = Checker::new(config.alphas.clone(), config.tolerances, exec)?;
    let mut reports = Vec::new();
    for &n in &config.tree_min {
        reports.push(ck.check_tree_min(n)?);
    }
    for &n in &config.tree_second_min {
        reports.push(ck.check_tree_second_min(n)?);
    }
    for &n in config.unicyclic_exploratory.iter().chain(&config.unicyclic_min) {
        reports.push(ck.check_unicyclic_min(n)?);
    }
    for &n in &config.global_max_trees {
        reports.push(ck.check_global_max(n, Family::Trees)?);
    }
    for &n in &config.global_max_connected {
        reports.push(ck.check_global_max(n, Family::Connected)?);
    }
    for &n in &config.max_degree_trees {
        for d in 2..n {
            reports.push(ck.check_max_degree_max(n, d, Family::Trees)?);
        }
    }
    for &n in &config.max_degree_connected {
        for d in 2..n {
            reports.push(ck.check_max_degree_max(n, d, Family::Connected)?);
        }
    }
    for &n in &config.clique_max {
        for w in 2..=n {
            reports.push(ck.check_clique_max(n, w)?);
        }
    }
    for &n in &config.odd_unicyclic_max {
        reports.push(ck.check_odd_unicyclic_max(n)?);
    }
    if config.bounds {
        let fams = [Family::Trees, Family::Unicyclic, Family::Connected];
        for (k, n) in config.census_orders() {
            reports.push(ck.check_bounds(fams[k as usize], n)?);
        }
    }
    if config.transform_instances > 0 {
        for kind in TransformKind::ALL {
            reports.push(ck.check_transform(kind, config.transform_instances, config.seed, config.transform_max_n)?);
        }
    }
    if !ck.evaluated().is_empty() {
        reports.push(ck.check_numerics());
        reports.push(ck.check_census_integrity(config.seed, config.integrity_pairs)?);
    }
    let passed = reports.iter().all(TheoremReport::passed);
    Ok(SuiteReport { passed, reports })
}
