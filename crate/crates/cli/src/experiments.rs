//! Batch experiment runners. Each returns named tables whose rows carry the
//! master seed, the ensemble tag and the sample count (indices `0..samples`)
//! needed to regenerate them.

use std::time::Instant;

use rayon::prelude::*;
use spectpd::analysis::{
    auc, bootstrap_auc_ci, fisher_combine, pearson_correlation, powerlaw_exponent, snr_sweep,
    wasserstein2, wasserstein2_paired, ScoreSet, Statistic,
};
use spectpd::ensembles::{sample_seed, EnsembleSpec};
use spectpd::numeric::{coefficient_of_variation, mean, sample_std, standard_error};
use spectpd::persistence::{
    diagram_from_spectrum, pe_closed_form_goe, semicircle_cdf, tp_wishart_asymptotic, DensityModel,
};
use spectpd::spectral_stats::{ks_test, unfold_bulk, wigner_surmise, wigner_surmise_cdf, Beta};
use spectpd::{PersistenceDiagram, Spectrum};

use crate::config::{Experiment, ExperimentConfig};
use crate::result::{ExperimentResult, Metadata, Table, Value};
use crate::RunError;

pub const VERSION: &str = env!("SPECTPD_VERSION");

/// Number of points on the figure grid for the eigenvalue CDF.
pub const ECDF_GRID_POINTS: usize = 512;
const ECDF_GRID_HALF_WIDTH: f64 = 2.2;
const HISTOGRAM_BIN_WIDTH: f64 = 0.1;
const HISTOGRAM_MAX: f64 = 4.0;
const SNR_THRESHOLD: f64 = 3.0;
const CI_LEVEL: f64 = 0.95;

type Tables = Result<Vec<Table>, RunError>;

/// Validates the config, runs the experiment and attaches metadata.
pub fn run(cfg: &ExperimentConfig) -> Result<ExperimentResult, RunError> {
    cfg.validate()?;
    let start = Instant::now();
    let tables = match cfg.experiment {
        Experiment::Universality => run_universality(cfg),
        Experiment::PeTable => run_pe_table(cfg),
        Experiment::Ensembles => run_ensembles(cfg),
        Experiment::SurmiseKs => run_surmise_ks(cfg),
        Experiment::W2 => run_w2(cfg),
        Experiment::Auc => run_auc(cfg),
        Experiment::RpSweep => run_rp_sweep(cfg),
        Experiment::Spiked => run_spiked(cfg),
        Experiment::EcdfFig => run_ecdf_fig(cfg),
    }?;
    Ok(ExperimentResult {
        tables,
        metadata: Metadata {
            experiment: cfg.experiment.to_string(),
            version: VERSION.to_string(),
            config: cfg.echo(),
            wall_time_seconds: start.elapsed().as_secs_f64(),
        },
    })
}

/// Per-statistic columns of values over samples `0..count` of `spec`.
fn statistic_columns(
    spec: &EnsembleSpec,
    count: usize,
    statistics: &[Statistic],
) -> Result<Vec<Vec<f64>>, RunError> {
    let spectra = spec.spectra::<f64>(count)?;
    columns(&spectra, statistics)
}

fn columns(spectra: &[Spectrum], statistics: &[Statistic]) -> Result<Vec<Vec<f64>>, RunError> {
    statistics
        .iter()
        .map(|st| {
            spectra
                .par_iter()
                .map(|s| st.evaluate(s))
                .collect::<spectpd::Result<Vec<f64>>>()
                .map_err(RunError::from)
        })
        .collect()
}

fn wishart(cfg: &ExperimentConfig, n: usize) -> EnsembleSpec {
    EnsembleSpec::wishart(n, cfg.wishart_ratio * n, cfg.master_seed)
}

fn bootstrap_seed(master: u64, label: &str) -> u64 {
    sample_seed(master, &format!("bootstrap,{label}"), 0)
}

fn exponent_row(
    table: &mut Table,
    label: &str,
    sizes: &[usize],
    ys: &[f64],
) -> Result<(), RunError> {
    if sizes.len() < 2 {
        return Ok(());
    }
    let xs: Vec<f64> = sizes.iter().map(|&n| n as f64).collect();
    let exponent = powerlaw_exponent(&xs, ys)?;
    let joined: Vec<String> = sizes.iter().map(|n| n.to_string()).collect();
    table.push(vec![label.into(), exponent.into(), joined.join(",").into()]);
    Ok(())
}

fn distinct_sorted(sizes: &[usize]) -> Vec<usize> {
    let mut v = sizes.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

pub fn run_universality(cfg: &ExperimentConfig) -> Tables {
    use Statistic::*;
    let sizes = distinct_sorted(&cfg.sizes);
    let mut cv = Table::new(
        "cv",
        &[
            "n",
            "samples",
            "mean_tp",
            "mean_pe",
            "mean_mu",
            "cv_tp",
            "cv_pe",
            "cv_mu",
            "master_seed",
            "spec_tag",
        ],
    );
    let mut cvs = [vec![], vec![], vec![]];
    for &n in &sizes {
        let spec = EnsembleSpec::goe(n, cfg.master_seed);
        let cols = statistic_columns(
            &spec,
            cfg.samples_per_cell,
            &[TotalPersistence, PersistenceEntropy, MaxBarFraction],
        )?;
        let c: Vec<f64> = cols.iter().map(|v| coefficient_of_variation(v)).collect();
        for k in 0..3 {
            cvs[k].push(c[k]);
        }
        cv.push(vec![
            n.into(),
            cfg.samples_per_cell.into(),
            mean(&cols[0]).into(),
            mean(&cols[1]).into(),
            mean(&cols[2]).into(),
            c[0].into(),
            c[1].into(),
            c[2].into(),
            cfg.master_seed.into(),
            spec.canonical_tag().into(),
        ]);
    }
    let mut exps = Table::new("cv_exponents", &["statistic", "exponent", "sizes"]);
    for (label, ys) in ["tp", "pe", "mu"].iter().zip(&cvs) {
        exponent_row(&mut exps, label, &sizes, ys)?;
    }
    Ok(vec![cv, exps])
}

pub fn run_pe_table(cfg: &ExperimentConfig) -> Tables {
    let sizes = distinct_sorted(&cfg.sizes);
    let mut pe = Table::new(
        "pe",
        &[
            "n",
            "samples",
            "pe_mean",
            "pe_sem",
            "pe_closed_form",
            "bias_percent",
            "master_seed",
            "spec_tag",
        ],
    );
    let mut biases = Vec::new();
    for &n in &sizes {
        let spec = EnsembleSpec::goe(n, cfg.master_seed);
        let col = statistic_columns(
            &spec,
            cfg.samples_per_cell,
            &[Statistic::PersistenceEntropy],
        )?
        .remove(0);
        let numeric = mean(&col);
        let analytic: f64 = pe_closed_form_goe(n);
        let bias = 100.0 * (analytic - numeric) / analytic;
        biases.push(bias);
        pe.push(vec![
            n.into(),
            cfg.samples_per_cell.into(),
            numeric.into(),
            standard_error(&col).into(),
            analytic.into(),
            bias.into(),
            cfg.master_seed.into(),
            spec.canonical_tag().into(),
        ]);
    }
    let mut exps = Table::new("bias_exponent", &["statistic", "exponent", "sizes"]);
    if biases.iter().all(|&b| b > 0.0) {
        exponent_row(&mut exps, "bias_percent", &sizes, &biases)?;
    }
    Ok(vec![pe, exps])
}

pub fn run_ensembles(cfg: &ExperimentConfig) -> Tables {
    use Statistic::*;
    let mut table = Table::new(
        "ensembles",
        &[
            "n",
            "ensemble",
            "p",
            "samples",
            "tp_mean",
            "tp_std",
            "pe_mean",
            "pe_std",
            "mu_mean",
            "mu_std",
            "tp_asymptotic",
            "master_seed",
            "spec_tag",
        ],
    );
    for &n in &distinct_sorted(&cfg.sizes) {
        let specs = [
            EnsembleSpec::goe(n, cfg.master_seed),
            EnsembleSpec::gue(n, cfg.master_seed),
            wishart(cfg, n),
        ];
        for spec in &specs {
            let cols = statistic_columns(
                spec,
                cfg.samples_per_cell,
                &[TotalPersistence, PersistenceEntropy, MaxBarFraction],
            )?;
            let tp_limit = match spec.gamma() {
                Some(g) => tp_wishart_asymptotic(g)?,
                None => 4.0,
            };
            table.push(vec![
                n.into(),
                spec.kind.as_str().into(),
                spec.p.map_or(Value::Text(String::new()), Value::from),
                cfg.samples_per_cell.into(),
                mean(&cols[0]).into(),
                sample_std(&cols[0]).into(),
                mean(&cols[1]).into(),
                sample_std(&cols[1]).into(),
                mean(&cols[2]).into(),
                sample_std(&cols[2]).into(),
                tp_limit.into(),
                cfg.master_seed.into(),
                spec.canonical_tag().into(),
            ]);
        }
    }
    Ok(vec![table])
}

/// Pooled unfolded bulk spacings of samples `0..count`.
pub fn pooled_unfolded_spacings(
    spec: &EnsembleSpec,
    count: usize,
    bulk_fraction: f64,
) -> Result<Vec<f64>, RunError> {
    let model = match spec.gamma() {
        Some(g) => DensityModel::marchenko_pastur(g)?,
        None => DensityModel::Semicircle,
    };
    let per_sample = spec
        .spectra::<f64>(count)?
        .par_iter()
        .map(|s| unfold_bulk(s, &model, bulk_fraction).map(|sp| sp.values))
        .collect::<spectpd::Result<Vec<_>>>()?;
    Ok(per_sample.concat())
}

pub fn run_surmise_ks(cfg: &ExperimentConfig) -> Tables {
    let mut ks = Table::new(
        "ks",
        &[
            "n",
            "ensemble",
            "beta",
            "matched",
            "statistic",
            "p_value",
            "spacings",
            "samples",
            "bulk_fraction",
            "master_seed",
            "spec_tag",
        ],
    );
    let mut hist = Table::new(
        "histogram",
        &[
            "n",
            "ensemble",
            "bin_left",
            "bin_right",
            "density",
            "surmise_beta1",
            "surmise_beta2",
        ],
    );
    let bins = (HISTOGRAM_MAX / HISTOGRAM_BIN_WIDTH).round() as usize;
    for &n in &distinct_sorted(&cfg.sizes) {
        let cases = [
            (EnsembleSpec::goe(n, cfg.master_seed), Beta::Orthogonal),
            (EnsembleSpec::gue(n, cfg.master_seed), Beta::Unitary),
            (wishart(cfg, n), Beta::Orthogonal),
        ];
        for (spec, matched) in &cases {
            let pooled = pooled_unfolded_spacings(spec, cfg.samples_per_cell, cfg.bulk_fraction)?;
            for beta in [Beta::Orthogonal, Beta::Unitary] {
                let r = ks_test(&pooled, |s| wigner_surmise_cdf(beta, s))?;
                ks.push(vec![
                    n.into(),
                    spec.kind.as_str().into(),
                    usize::from(beta.value()).into(),
                    (beta == *matched).into(),
                    r.statistic.into(),
                    r.p_value.into(),
                    r.sample_size.into(),
                    cfg.samples_per_cell.into(),
                    cfg.bulk_fraction.into(),
                    cfg.master_seed.into(),
                    spec.canonical_tag().into(),
                ]);
            }
            let mut counts = vec![0usize; bins];
            for &s in &pooled {
                let b = (s / HISTOGRAM_BIN_WIDTH).floor();
                if b >= 0.0 && (b as usize) < bins {
                    counts[b as usize] += 1;
                }
            }
            let total = pooled.len() as f64;
            for (b, &c) in counts.iter().enumerate() {
                let left = b as f64 * HISTOGRAM_BIN_WIDTH;
                let mid = left + HISTOGRAM_BIN_WIDTH / 2.0;
                hist.push(vec![
                    n.into(),
                    spec.kind.as_str().into(),
                    left.into(),
                    (left + HISTOGRAM_BIN_WIDTH).into(),
                    (c as f64 / (total * HISTOGRAM_BIN_WIDTH)).into(),
                    wigner_surmise(Beta::Orthogonal, mid).into(),
                    wigner_surmise(Beta::Unitary, mid).into(),
                ]);
            }
        }
    }
    Ok(vec![ks, hist])
}

fn diagrams(spec: &EnsembleSpec, count: usize) -> Result<Vec<PersistenceDiagram>, RunError> {
    spec.spectra::<f64>(count)?
        .iter()
        .map(|s| diagram_from_spectrum(s).map_err(RunError::from))
        .collect()
}

/// GOE–GOE pairs use GOE samples `2k` and `2k + 1`; GOE–Wishart pairs use
/// sample `k` of each ensemble. `w2` pairs the bars of each dimension;
/// `w2_diagonal` also allows matching both bars to the diagonal.
pub fn run_w2(cfg: &ExperimentConfig) -> Tables {
    let pairs = cfg.samples_per_cell;
    let mut summary = Table::new(
        "w2",
        &[
            "n",
            "comparison",
            "pairs",
            "w2_mean",
            "w2_std",
            "w2_diagonal_mean",
            "w2_diagonal_std",
            "master_seed",
            "spec_tag_a",
            "spec_tag_b",
        ],
    );
    let mut ratios = Table::new("w2_ratio", &["n", "ratio", "ratio_diagonal"]);
    let mut per_pair = Table::new(
        "w2_pairs",
        &[
            "n",
            "comparison",
            "pair",
            "index_a",
            "index_b",
            "w2",
            "w2_diagonal",
        ],
    );
    for &n in &distinct_sorted(&cfg.sizes) {
        let goe_spec = EnsembleSpec::goe(n, cfg.master_seed);
        let wishart_spec = wishart(cfg, n);
        let goe = diagrams(&goe_spec, 2 * pairs)?;
        let wis = diagrams(&wishart_spec, pairs)?;
        let distances = |index: &(dyn Fn(usize) -> (usize, usize) + Sync),
                         other: &[PersistenceDiagram]| {
            (0..pairs)
                .into_par_iter()
                .map(|k| {
                    let (ia, ib) = index(k);
                    Ok((
                        wasserstein2_paired(&goe[ia], &other[ib])?,
                        wasserstein2(&goe[ia], &other[ib])?,
                    ))
                })
                .collect::<spectpd::Result<Vec<(f64, f64)>>>()
        };
        let same_index = |k: usize| (2 * k, 2 * k + 1);
        let cross_index = |k: usize| (k, k);
        let same = distances(&same_index, &goe)?;
        let cross = distances(&cross_index, &wis)?;
        let mut means = Vec::new();
        for (label, values, index, tag_b) in [
            (
                "goe_goe",
                &same,
                &same_index as &dyn Fn(usize) -> (usize, usize),
                goe_spec.canonical_tag(),
            ),
            (
                "goe_wishart",
                &cross,
                &cross_index,
                wishart_spec.canonical_tag(),
            ),
        ] {
            let paired: Vec<f64> = values.iter().map(|v| v.0).collect();
            let diagonal: Vec<f64> = values.iter().map(|v| v.1).collect();
            means.push((mean(&paired), mean(&diagonal)));
            summary.push(vec![
                n.into(),
                label.into(),
                pairs.into(),
                mean(&paired).into(),
                sample_std(&paired).into(),
                mean(&diagonal).into(),
                sample_std(&diagonal).into(),
                cfg.master_seed.into(),
                goe_spec.canonical_tag().into(),
                tag_b.into(),
            ]);
            for (k, &(w, wd)) in values.iter().enumerate() {
                let (ia, ib) = index(k);
                per_pair.push(vec![
                    n.into(),
                    label.into(),
                    k.into(),
                    ia.into(),
                    ib.into(),
                    w.into(),
                    wd.into(),
                ]);
            }
        }
        ratios.push(vec![
            n.into(),
            (means[1].0 / means[0].0).into(),
            (means[1].1 / means[0].1).into(),
        ]);
    }
    Ok(vec![summary, ratios, per_pair])
}

fn auc_row(
    table: &mut Table,
    cfg: &ExperimentConfig,
    lead: Vec<Value>,
    scores: &ScoreSet<f64>,
    label: &str,
    tags: (&str, &str),
) -> Result<(), RunError> {
    let a = auc(scores)?;
    let (lo, hi) = bootstrap_auc_ci(
        scores,
        cfg.bootstrap_replicates,
        CI_LEVEL,
        bootstrap_seed(cfg.master_seed, label),
    )?;
    let mut row = lead;
    row.extend([
        scores.statistic_name.as_str().into(),
        a.value.into(),
        a.raw.into(),
        a.reversed.into(),
        lo.into(),
        hi.into(),
        scores.class_a.len().into(),
        cfg.bootstrap_replicates.into(),
        cfg.master_seed.into(),
        tags.0.into(),
        tags.1.into(),
    ]);
    table.push(row);
    Ok(())
}

const AUC_COLUMNS: [&str; 11] = [
    "statistic",
    "auc",
    "raw_auc",
    "reversed",
    "ci_low",
    "ci_high",
    "samples_per_class",
    "bootstrap_replicates",
    "master_seed",
    "spec_tag_a",
    "spec_tag_b",
];

fn with_lead(lead: &[&'static str]) -> Vec<&'static str> {
    lead.iter().chain(AUC_COLUMNS.iter()).copied().collect()
}

/// GOE (class a) against GUE (class b) at each size.
pub fn run_auc(cfg: &ExperimentConfig) -> Tables {
    use Statistic::*;
    let stats = [PersistenceEntropy, SpacingRatio, SpacingVariance];
    let mut table = Table::new("auc", &with_lead(&["n"]));
    let mut pearson = Table::new(
        "pearson",
        &["n", "pearson_pe_r", "samples", "master_seed", "spec_tag"],
    );
    let mut ratio = Table::new(
        "spacing_ratio",
        &[
            "n",
            "ensemble",
            "mean_r",
            "std_r",
            "samples",
            "master_seed",
            "spec_tag",
        ],
    );
    for &n in &distinct_sorted(&cfg.sizes) {
        let goe_spec = EnsembleSpec::goe(n, cfg.master_seed);
        let gue_spec = EnsembleSpec::gue(n, cfg.master_seed);
        let goe = statistic_columns(&goe_spec, cfg.samples_per_cell, &stats)?;
        let gue = statistic_columns(&gue_spec, cfg.samples_per_cell, &stats)?;
        let tags = (goe_spec.canonical_tag(), gue_spec.canonical_tag());
        let tags = (tags.0.as_str(), tags.1.as_str());
        for (k, st) in stats.iter().enumerate() {
            let scores = ScoreSet::new(goe[k].clone(), gue[k].clone(), st.name());
            auc_row(
                &mut table,
                cfg,
                vec![n.into()],
                &scores,
                &format!("n={n},{}", st.name()),
                tags,
            )?;
        }
        let features = |cols: &[Vec<f64>]| -> Vec<(f64, f64)> {
            cols[0]
                .iter()
                .copied()
                .zip(cols[1].iter().copied())
                .collect()
        };
        let mut fisher = fisher_combine(&features(&goe), &features(&gue))?;
        fisher.statistic_name = "fisher_pe_r".into();
        auc_row(
            &mut table,
            cfg,
            vec![n.into()],
            &fisher,
            &format!("n={n},fisher_pe_r"),
            tags,
        )?;
        pearson.push(vec![
            n.into(),
            pearson_correlation(&goe[0], &goe[1])?.into(),
            cfg.samples_per_cell.into(),
            cfg.master_seed.into(),
            tags.0.into(),
        ]);
        for (spec, cols) in [(&goe_spec, &goe), (&gue_spec, &gue)] {
            ratio.push(vec![
                n.into(),
                spec.kind.as_str().into(),
                mean(&cols[1]).into(),
                sample_std(&cols[1]).into(),
                cfg.samples_per_cell.into(),
                cfg.master_seed.into(),
                spec.canonical_tag().into(),
            ]);
        }
    }
    Ok(vec![table, pearson, ratio])
}

pub fn run_rp_sweep(cfg: &ExperimentConfig) -> Tables {
    use Statistic::*;
    let stats = [PersistenceEntropy, SpacingRatio, SpacingVariance];
    let mut snr = Table::new(
        "snr",
        &[
            "n",
            "lambda",
            "statistic",
            "mean",
            "snr",
            "reference_mean",
            "reference_std",
            "samples",
            "master_seed",
            "spec_tag",
        ],
    );
    let mut values = Table::new(
        "rp_values",
        &[
            "n",
            "lambda",
            "index",
            "pe",
            "r",
            "spacing_variance",
            "spec_tag",
        ],
    );
    let mut crossings = Table::new(
        "crossings",
        &["n", "statistic", "threshold", "first_lambda", "max_snr"],
    );
    for &n in &distinct_sorted(&cfg.sizes) {
        let sweep = snr_sweep::<f64>(
            &stats,
            &cfg.lambda_grid,
            n,
            cfg.samples_per_cell,
            cfg.master_seed,
        )?;
        let tags: Vec<String> = cfg
            .lambda_grid
            .iter()
            .map(|&l| EnsembleSpec::rosenzweig_porter(n, l, cfg.master_seed).canonical_tag())
            .collect();
        for curve in &sweep.curves {
            for (k, &lambda) in cfg.lambda_grid.iter().enumerate() {
                snr.push(vec![
                    n.into(),
                    lambda.into(),
                    curve.statistic.name().into(),
                    curve.means[k].into(),
                    curve.snr[k].into(),
                    curve.reference_mean.into(),
                    curve.reference_std.into(),
                    cfg.samples_per_cell.into(),
                    cfg.master_seed.into(),
                    tags[k].as_str().into(),
                ]);
            }
            let first = cfg
                .lambda_grid
                .iter()
                .zip(&curve.snr)
                .find(|(_, &s)| s >= SNR_THRESHOLD)
                .map(|(&l, _)| l);
            let max = curve.snr.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            crossings.push(vec![
                n.into(),
                curve.statistic.name().into(),
                SNR_THRESHOLD.into(),
                first.into(),
                max.into(),
            ]);
        }
        for (k, &lambda) in cfg.lambda_grid.iter().enumerate() {
            for i in 0..cfg.samples_per_cell {
                let mut row: Vec<Value> = vec![n.into(), lambda.into(), i.into()];
                row.extend(sweep.curves.iter().map(|c| Value::from(c.values[k][i])));
                row.push(tags[k].as_str().into());
                values.push(row);
            }
        }
    }
    Ok(vec![snr, values, crossings])
}

/// Plain Wishart (class a) against spiked Wishart (class b) for θ = 0 and
/// every grid value.
pub fn run_spiked(cfg: &ExperimentConfig) -> Tables {
    use Statistic::*;
    let stats = [LargestEigenvalue, PersistenceEntropy];
    let mut table = Table::new("spiked_auc", &with_lead(&["n", "p", "theta"]));
    let mut thetas = vec![0.0];
    thetas.extend(cfg.theta_grid.iter().copied().filter(|&t| t != 0.0));
    for &n in &distinct_sorted(&cfg.sizes) {
        let p = cfg.wishart_ratio * n;
        let null_spec = wishart(cfg, n);
        let null = statistic_columns(&null_spec, cfg.samples_per_cell, &stats)?;
        for &theta in &thetas {
            let alt_spec = EnsembleSpec::spiked_wishart(n, p, theta, cfg.master_seed);
            let alt = statistic_columns(&alt_spec, cfg.samples_per_cell, &stats)?;
            let alt_tag = alt_spec.canonical_tag();
            let null_tag = null_spec.canonical_tag();
            for (k, st) in stats.iter().enumerate() {
                let scores = ScoreSet::new(null[k].clone(), alt[k].clone(), st.name());
                auc_row(
                    &mut table,
                    cfg,
                    vec![n.into(), p.into(), theta.into()],
                    &scores,
                    &format!("{alt_tag},{}", st.name()),
                    (&null_tag, &alt_tag),
                )?;
            }
        }
    }
    Ok(vec![table])
}

pub fn run_ecdf_fig(cfg: &ExperimentConfig) -> Tables {
    let mut curve = Table::new("ecdf", &["n", "x", "ecdf", "semicircle_cdf"]);
    let mut summary = Table::new(
        "ecdf_summary",
        &[
            "n",
            "samples",
            "eigenvalues",
            "max_deviation",
            "grid_max_deviation",
            "master_seed",
            "spec_tag",
        ],
    );
    for &n in &distinct_sorted(&cfg.sizes) {
        let spec = EnsembleSpec::goe(n, cfg.master_seed);
        let mut pooled: Vec<f64> = spec
            .spectra::<f64>(cfg.samples_per_cell)?
            .into_iter()
            .flat_map(Spectrum::into_values)
            .collect();
        pooled.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        let total = pooled.len() as f64;
        let mut grid_max: f64 = 0.0;
        for k in 0..ECDF_GRID_POINTS {
            let x = -ECDF_GRID_HALF_WIDTH
                + 2.0 * ECDF_GRID_HALF_WIDTH * k as f64 / (ECDF_GRID_POINTS - 1) as f64;
            let empirical = pooled.partition_point(|&v| v <= x) as f64 / total;
            let exact: f64 = semicircle_cdf(x);
            grid_max = grid_max.max((empirical - exact).abs());
            curve.push(vec![n.into(), x.into(), empirical.into(), exact.into()]);
        }
        let exact_max = ks_test(&pooled, semicircle_cdf)?.statistic;
        summary.push(vec![
            n.into(),
            cfg.samples_per_cell.into(),
            pooled.len().into(),
            exact_max.into(),
            grid_max.into(),
            cfg.master_seed.into(),
            spec.canonical_tag().into(),
        ]);
    }
    Ok(vec![curve, summary])
}
