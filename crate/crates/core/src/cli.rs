//! Command-line pipeline: spec ingestion, commands and output files.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::cloud::PointCloud;
use crate::dynamics::orbit::{excluded_orbit, orbit_sample};
use crate::error::{Error, Result};
use crate::forms::{
    BilinearForm, CoxeterSpec, CoxeterSystem, Mode, NormalizedPoint, SystemKind, Tolerances,
};
use crate::geometry::components::{
    classify_case, Case, ClassificationReport, ComponentDecomposition,
};
use crate::geometry::sampler::QhatSampler;
use crate::geometry::visibility::{expansion_t, visibility_constant};
use crate::metric::{hausdorff, nearest_distances, ChordalEmbedding, ChordalIndex, Hausdorff};
use crate::roots::{enumerate_roots_capped, limit_estimate, normalized_roots, LimitEstimate};

#[derive(Parser, Debug)]
#[command(
    name = "limit-roots",
    version,
    about = "Limit roots of Lorentzian Coxeter groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Form entries, eigenvalues, signature and normalization vector.
    Analyze,
    /// Enumerate positive roots and write their normalized points.
    Roots,
    /// Compare deep normalized roots with the isotropic ellipsoid.
    Limitset,
    /// Orbit of one limit point, compared with the limit estimate.
    Orbit,
    /// Contained / not-contained classification with visibility constants.
    Classify,
    /// Gnuplot script for the CSV files already in the output directory.
    Plotscript,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct RunConfig {
    /// JSON spec file.
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, global = true, default_value_t = 20)]
    pub max_depth: usize,
    /// Smallest root depth kept in the limit estimate (default: max depth minus 5).
    #[arg(long, global = true)]
    pub depth_min: Option<usize>,
    #[arg(long, global = true, default_value_t = 10)]
    pub max_word_len: usize,
    /// Number of ellipsoid samples.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1e-7)]
    pub eps_q: f64,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub eps1: f64,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_vis: f64,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_bary: f64,
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub quant: f64,
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub conv_tol: f64,
    /// Hausdorff tolerance for verdicts.
    #[arg(long, global = true, default_value_t = 0.05)]
    pub delta: f64,
    /// Bound on stored roots and orbit points.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub cap: usize,
    /// Approximate number of outside samples pushed through the group.
    #[arg(long, global = true, default_value_t = 200)]
    pub excluded_seeds: usize,
    /// Orbit seed: `deepest`, `rank:K` (K-th deepest root) or `point:x1,...,xn`.
    #[arg(long, global = true, default_value = "deepest")]
    pub select: String,
    /// Coordinate triple for 3D plots (1-based).
    #[arg(long, global = true, default_value = "1,2,3")]
    pub axes: String,
}

impl RunConfig {
    pub fn tolerances(&self) -> Result<Tolerances> {
        let t = Tolerances {
            eps_v1: self.eps1,
            eps_q: self.eps_q,
            visibility: self.tol_vis,
            barycentric: self.tol_bary,
            quant: self.quant,
            convergence: self.conv_tol,
            ..Tolerances::default()
        };
        let all = [
            t.eps_v1,
            t.eps_q,
            t.visibility,
            t.barycentric,
            t.quant,
            t.convergence,
            self.delta,
        ];
        if all.iter().any(|x| !(*x > 0.0)) {
            return Err(Error::InvalidSpec("tolerances must be positive".into()));
        }
        if self.samples == 0 || self.cap == 0 {
            return Err(Error::InvalidSpec("counts must be at least 1".into()));
        }
        Ok(t)
    }

    pub fn depth_min(&self) -> usize {
        self.depth_min.unwrap_or(self.max_depth.saturating_sub(5))
    }

    fn comments(&self, command: Command, rank: usize) -> Vec<String> {
        vec![
            format!(
                "command: {}",
                serde_json::to_string(&command).unwrap_or_default()
            ),
            format!("rank: {rank}"),
            format!(
                "config: {}",
                serde_json::to_string(self).unwrap_or_default()
            ),
            format!(
                "tolerances: {}",
                self.tolerances()
                    .ok()
                    .and_then(|t| serde_json::to_string(&t).ok())
                    .unwrap_or_default()
            ),
        ]
    }
}

/// Process exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::UnsupportedSignature(_) => 2,
        Error::RejectReducible
        | Error::RejectBadBond { .. }
        | Error::InvalidSpec(_)
        | Error::Json(_) => 3,
        Error::Io(_) | Error::MissingInput(_) => 1,
        _ => 4,
    }
}

pub fn load_spec(config: &RunConfig) -> Result<CoxeterSpec> {
    let path = config
        .spec
        .as_ref()
        .ok_or_else(|| Error::MissingInput("--spec is required".into()))?;
    let text = fs::read_to_string(path)?;
    CoxeterSpec::from_json(&text)
}

pub fn load_system(config: &RunConfig) -> Result<CoxeterSystem> {
    CoxeterSystem::from_spec(&load_spec(config)?, config.tolerances()?)
}

/// Runs one command and returns the files it wrote.
pub fn run(command: Command, config: &RunConfig) -> Result<Vec<PathBuf>> {
    let mut ctx = Context {
        config,
        command,
        written: Vec::new(),
    };
    match command {
        Command::Analyze => ctx.analyze()?,
        Command::Roots => ctx.roots()?,
        Command::Limitset => ctx.limitset()?,
        Command::Orbit => ctx.orbit()?,
        Command::Classify => ctx.classify()?,
        Command::Plotscript => ctx.plotscript()?,
    }
    Ok(ctx.written)
}

struct Context<'a> {
    config: &'a RunConfig,
    command: Command,
    written: Vec<PathBuf>,
}

#[derive(Serialize)]
struct AnalyzeReport<'a> {
    config: &'a RunConfig,
    rank: usize,
    form: Vec<Vec<f64>>,
    eigenvalues: Vec<f64>,
    signature: [usize; 3],
    mode: Option<Mode>,
    kind: Option<SystemKind>,
    o: Option<Vec<f64>>,
    simple_norms: Option<Vec<f64>>,
}

#[derive(Serialize)]
struct LimitVerdict<'a> {
    config: &'a RunConfig,
    case: &'static str,
    m: usize,
    roots: usize,
    limit_points: usize,
    depth_min: usize,
    eps_q: f64,
    qhat_pass_fraction: f64,
    max_abs_q: f64,
    delta: f64,
    limit_vs_qhat: Option<Hausdorff>,
    excluded_points: Option<usize>,
    excluded_word_len: Option<usize>,
    margin: Option<f64>,
    cover: Option<f64>,
    pass: Option<bool>,
}

#[derive(Serialize)]
struct Classification<'a> {
    config: &'a RunConfig,
    #[serde(flatten)]
    report: ClassificationReport,
}

#[derive(Serialize)]
struct OrbitComparison<'a> {
    config: &'a RunConfig,
    seed_point: Vec<f64>,
    seed_qvalue: f64,
    max_word_len: usize,
    orbit_points: usize,
    limit_points: usize,
    hausdorff: Hausdorff,
    delta: f64,
    pass: bool,
}

impl Context<'_> {
    fn path(&self, name: &str) -> Result<PathBuf> {
        fs::create_dir_all(&self.config.out)?;
        Ok(self.config.out.join(name))
    }

    fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let path = self.path(name)?;
        let mut f = BufWriter::new(File::create(&path)?);
        serde_json::to_writer_pretty(&mut f, value)?;
        writeln!(f)?;
        f.flush()?;
        self.written.push(path);
        Ok(())
    }

    fn write_cloud(
        &mut self,
        name: &str,
        sys: &CoxeterSystem,
        cloud: &PointCloud,
        with_component: bool,
    ) -> Result<()> {
        let path = self.path(name)?;
        let f = BufWriter::new(File::create(&path)?);
        let comments = self.config.comments(self.command, sys.rank());
        cloud.write_csv(f, sys.normalization(), &comments, with_component)?;
        self.written.push(path);
        Ok(())
    }

    fn analyze(&mut self) -> Result<()> {
        let spec = load_spec(self.config)?;
        let tol = self.config.tolerances()?;
        let form = BilinearForm::from_spec(&spec)?;
        let sig = form.signature(tol.eigen_zero);
        let sys = CoxeterSystem::from_form(form.clone(), tol);
        let n = form.rank();
        let report = AnalyzeReport {
            config: self.config,
            rank: n,
            form: (0..n)
                .map(|i| (0..n).map(|j| form.entry(i, j)).collect())
                .collect(),
            eigenvalues: form.eigenvalues().to_vec(),
            signature: [sig.positive, sig.negative, sig.zero],
            mode: sys.as_ref().ok().map(|s| s.normalization().mode()),
            kind: sys.as_ref().ok().map(|s| s.kind()),
            o: sys.as_ref().ok().map(|s| s.normalization().o().to_vec()),
            simple_norms: sys
                .as_ref()
                .ok()
                .map(|s| (0..n).map(|i| s.normalization().simple_norm(i)).collect()),
        };
        println!("{}", serde_json::to_string_pretty(&report)?);
        self.write_json("analyze.json", &report)?;
        sys.map(|_| ())
    }

    fn root_cloud(&self, sys: &CoxeterSystem) -> Result<(usize, PointCloud)> {
        let tol = sys.tolerances();
        let inv = enumerate_roots_capped(
            sys.form(),
            self.config.max_depth,
            tol.quant,
            self.config.cap,
        )?;
        let cloud = normalized_roots(sys.form(), &inv, sys.normalization(), tol.near_v0)?;
        Ok((inv.len(), cloud))
    }

    fn roots(&mut self) -> Result<()> {
        let sys = load_system(self.config)?;
        let (_, cloud) = self.root_cloud(&sys)?;
        self.write_cloud("roots.csv", &sys, &cloud, false)
    }

    fn estimate(&self, sys: &CoxeterSystem, cloud: &PointCloud) -> Result<LimitEstimate> {
        limit_estimate(cloud, self.config.depth_min(), sys.tolerances().eps_q)
    }

    fn decomposition(
        &self,
        sys: &CoxeterSystem,
        samples: &PointCloud,
    ) -> Result<(ComponentDecomposition, ClassificationReport)> {
        let dec = classify_case(sys, samples)?;
        let c_prime = match dec.case {
            Case::Contained => visibility_constant(sys, samples).ok(),
            Case::NotContained => None,
        };
        let t = c_prime.and_then(|c| expansion_t(sys, c * 0.999).ok());
        let report = dec.summary(c_prime, t);
        Ok((dec, report))
    }

    fn limitset(&mut self) -> Result<()> {
        let sys = load_system(self.config)?;
        let (n_roots, roots) = self.root_cloud(&sys)?;
        self.write_cloud("roots.csv", &sys, &roots, false)?;
        if sys.kind() == SystemKind::Finite {
            let verdict = LimitVerdict {
                config: self.config,
                case: "E empty",
                m: 0,
                roots: n_roots,
                limit_points: 0,
                depth_min: self.config.depth_min(),
                eps_q: sys.tolerances().eps_q,
                qhat_pass_fraction: 0.0,
                max_abs_q: 0.0,
                delta: self.config.delta,
                limit_vs_qhat: None,
                excluded_points: None,
                excluded_word_len: None,
                margin: None,
                cover: None,
                pass: None,
            };
            return self.write_json("verdict.json", &verdict);
        }
        let est = self.estimate(&sys, &roots)?;
        self.write_cloud("limit_estimate.csv", &sys, &est.cloud, false)?;
        let samples = QhatSampler::new(&sys)?.sample(self.config.samples, self.config.seed)?;
        self.write_cloud("qhat_samples.csv", &sys, &samples, false)?;
        let (dec, report) = self.decomposition(&sys, &samples)?;
        self.write_json(
            "classification.json",
            &Classification {
                config: self.config,
                report,
            },
        )?;
        let max_abs_q = (0..est.cloud.len())
            .map(|k| est.cloud.qvalue(k).abs())
            .fold(0.0, f64::max);
        let mut verdict = LimitVerdict {
            config: self.config,
            case: "contained",
            m: dec.m(),
            roots: n_roots,
            limit_points: est.cloud.len(),
            depth_min: est.depth_min,
            eps_q: est.eps_q,
            qhat_pass_fraction: est.pass_fraction,
            max_abs_q,
            delta: self.config.delta,
            limit_vs_qhat: None,
            excluded_points: None,
            excluded_word_len: None,
            margin: None,
            cover: None,
            pass: None,
        };
        let (form, nd) = (sys.form(), sys.normalization());
        let h = hausdorff(form, nd, &est.cloud, &samples)?;
        verdict.limit_vs_qhat = Some(h);
        match dec.case {
            Case::Contained => {
                verdict.pass = Some(h.symmetric <= self.config.delta);
            }
            Case::NotContained => {
                verdict.case = "not_contained";
                let outside = dec.outside_cloud().map_or(0, |c| c.len());
                let stride = outside.div_ceil(self.config.excluded_seeds.max(1)).max(1);
                let excluded = excluded_orbit(
                    &sys,
                    &dec.thinned(stride),
                    self.config.max_word_len,
                    self.config.cap,
                )?;
                self.write_cloud("excluded.csv", &sys, &excluded, true)?;
                let emb = ChordalEmbedding::new(form, nd);
                let ex_index = ChordalIndex::new(emb.clone(), &excluded);
                let margin = nearest_distances(&ex_index, &est.cloud)
                    .into_iter()
                    .fold(f64::INFINITY, f64::min);
                let mut union = est.cloud.clone();
                union.extend(&excluded);
                let union_index = ChordalIndex::new(emb, &union);
                let cover = nearest_distances(&union_index, &samples)
                    .into_iter()
                    .fold(0.0, f64::max);
                verdict.excluded_points = Some(excluded.len());
                verdict.excluded_word_len = Some(self.config.max_word_len);
                verdict.margin = Some(margin);
                verdict.cover = Some(cover);
                verdict.pass = Some(cover <= self.config.delta && margin >= 1e-3);
            }
        }
        self.write_json("verdict.json", &verdict)
    }

    fn select_seed(&self, sys: &CoxeterSystem, est: &PointCloud) -> Result<NormalizedPoint> {
        let sampler = QhatSampler::new(sys)?;
        let sel = self.config.select.trim();
        let raw: Vec<f64> = if sel == "deepest" {
            let k = (0..est.len())
                .max_by(|&a, &b| {
                    est.depth(a)
                        .cmp(&est.depth(b))
                        .then(est.qvalue(b).abs().total_cmp(&est.qvalue(a).abs()))
                })
                .ok_or(Error::EmptyCloud)?;
            est.point(k).to_vec()
        } else if let Some(k) = sel.strip_prefix("rank:") {
            let k: usize = k
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("bad selector {sel:?}")))?;
            let mut order: Vec<usize> = (0..est.len()).collect();
            order.sort_by(|&a, &b| est.depth(b).cmp(&est.depth(a)).then(a.cmp(&b)));
            let idx = *order
                .get(k)
                .ok_or_else(|| Error::InvalidSpec(format!("selector {sel:?} out of range")))?;
            est.point(idx).to_vec()
        } else if let Some(list) = sel.strip_prefix("point:") {
            let v: Vec<f64> = list
                .split(',')
                .map(|t| t.trim().parse())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidSpec(format!("bad selector {sel:?}")))?;
            if v.len() != sys.rank() {
                return Err(Error::InvalidSpec(format!(
                    "selector point needs {} coordinates",
                    sys.rank()
                )));
            }
            sys.normalize(&v)?.coords
        } else {
            return Err(Error::InvalidSpec(format!("unknown selector {sel:?}")));
        };
        sampler.project(&raw)
    }

    fn orbit(&mut self) -> Result<()> {
        let sys = load_system(self.config)?;
        let (_, roots) = self.root_cloud(&sys)?;
        let est = self.estimate(&sys, &roots)?;
        let seed = self.select_seed(&sys, &est.cloud)?;
        let orbit = orbit_sample(&sys, &seed, self.config.max_word_len, self.config.cap)?;
        self.write_cloud("orbit.csv", &sys, &orbit, true)?;
        let h = hausdorff(sys.form(), sys.normalization(), &orbit, &est.cloud)?;
        let comparison = OrbitComparison {
            config: self.config,
            seed_point: seed.coords.clone(),
            seed_qvalue: seed.qvalue,
            max_word_len: self.config.max_word_len,
            orbit_points: orbit.len(),
            limit_points: est.cloud.len(),
            hausdorff: h,
            delta: self.config.delta,
            pass: h.symmetric <= self.config.delta,
        };
        self.write_json("comparison.json", &comparison)
    }

    fn classify(&mut self) -> Result<()> {
        let sys = load_system(self.config)?;
        let samples = QhatSampler::new(&sys)?.sample(self.config.samples, self.config.seed)?;
        let (_, report) = self.decomposition(&sys, &samples)?;
        println!("{}", serde_json::to_string_pretty(&report)?);
        self.write_json(
            "classification.json",
            &Classification {
                config: self.config,
                report,
            },
        )
    }

    fn plotscript(&mut self) -> Result<()> {
        const CLOUDS: [&str; 5] = [
            "qhat_samples.csv",
            "excluded.csv",
            "roots.csv",
            "limit_estimate.csv",
            "orbit.csv",
        ];
        let dir = &self.config.out;
        let present: Vec<&str> = CLOUDS
            .iter()
            .copied()
            .filter(|f| dir.join(f).is_file())
            .collect();
        if present.is_empty() {
            return Err(Error::MissingInput(format!(
                "no point clouds in {}",
                dir.display()
            )));
        }
        let rank = csv_rank(&dir.join(present[0]))?;
        let script = plot_script(rank, &present, &self.config.axes)?;
        let path = self.path("plot.gp")?;
        fs::write(&path, script)?;
        self.written.push(path);
        Ok(())
    }
}

/// Number of `x` columns in a CSV written by this crate.
fn csv_rank(path: &Path) -> Result<usize> {
    let text = fs::read_to_string(path)?;
    let header = text
        .lines()
        .find(|l| !l.starts_with('#'))
        .ok_or_else(|| Error::MissingInput(format!("{} has no header", path.display())))?;
    Ok(header.split(',').filter(|h| h.starts_with('x')).count())
}

/// Gnuplot script: barycentric triangle for rank 3, `splot` of three ambient
/// coordinates otherwise.
pub fn plot_script(rank: usize, files: &[&str], axes: &str) -> Result<String> {
    let mut s = String::new();
    s.push_str("set datafile separator ','\nset datafile commentschars '#'\nset datafile columnheaders\nset key outside\n");
    let style = |f: &str| match f {
        "qhat_samples.csv" => "with dots lc rgb '#999999'",
        "excluded.csv" => "with dots lc rgb '#d62728'",
        "orbit.csv" => "with points pt 7 ps 0.2 lc rgb '#2ca02c'",
        _ => "with points pt 7 ps 0.2 lc rgb '#1f77b4'",
    };
    if rank == 3 {
        // Barycentric (b1, b2, b3) in columns 6..8, mapped to an equilateral triangle.
        s.push_str("set size ratio -1\nunset tics\nunset border\n");
        s.push_str("set arrow from 0,0 to 1,0 nohead\nset arrow from 1,0 to 0.5,sqrt(3)/2 nohead\nset arrow from 0.5,sqrt(3)/2 to 0,0 nohead\n");
        let parts: Vec<String> = files
            .iter()
            .map(|f| {
                format!(
                    "'{f}' using ($7 + 0.5*$8):($8*sqrt(3)/2) {} title '{f}'",
                    style(f)
                )
            })
            .collect();
        s.push_str(&format!("plot {}\n", parts.join(", \\\n     ")));
    } else {
        let ax: Vec<usize> = axes
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidSpec(format!("bad --axes {axes:?}")))?;
        if ax.len() != 3 || ax.iter().any(|&a| a == 0 || a > rank) {
            return Err(Error::InvalidSpec(format!(
                "--axes needs three indices in 1..={rank}"
            )));
        }
        let cols: Vec<String> = ax.iter().map(|a| format!("{}", a + 2)).collect();
        s.push_str(&format!(
            "set xlabel 'x{}'\nset ylabel 'x{}'\nset zlabel 'x{}'\nset view equal xyz\n",
            ax[0], ax[1], ax[2]
        ));
        let parts: Vec<String> = files
            .iter()
            .map(|f| {
                format!(
                    "'{f}' using {}:{}:{} {} title '{f}'",
                    cols[0],
                    cols[1],
                    cols[2],
                    style(f)
                )
            })
            .collect();
        s.push_str(&format!("splot {}\n", parts.join(", \\\n      ")));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(
            exit_code(&Error::UnsupportedSignature(crate::Signature::new(2, 2, 0))),
            2
        );
        assert_eq!(exit_code(&Error::RejectReducible), 3);
        assert_eq!(exit_code(&Error::MissingInput("x".into())), 1);
        assert_eq!(exit_code(&Error::DegenerateEigen("x".into())), 4);
    }

    #[test]
    fn rank3_script_is_barycentric() {
        let s = plot_script(3, &["roots.csv"], "1,2,3").unwrap();
        assert!(s.contains("plot 'roots.csv'") && s.contains("sqrt(3)/2"));
    }

    #[test]
    fn rank4_script_uses_axes() {
        let s = plot_script(4, &["roots.csv"], "2,3,4").unwrap();
        assert!(s.contains("splot 'roots.csv' using 4:5:6"));
        assert!(plot_script(4, &["roots.csv"], "1,2,9").is_err());
    }
}
