//! CSV rendering. Numbers carry 17 significant digits; `#` lines hold the
//! resolved configuration and summaries.

use std::fmt::Write;

use super::{ExperimentConfig, Outcome, SweepPoint};

fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "nan".to_string()
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_else(|| "nan".into())
}

fn flag(x: Option<bool>) -> &'static str {
    match x {
        Some(true) => "1",
        Some(false) => "0",
        None => "",
    }
}

fn header(out: &mut String, cfg: &ExperimentConfig) {
    writeln!(out, "# qsync {}", cfg.experiment).unwrap();
    writeln!(
        out,
        "# sweep grids, chain settings, transient and window lengths are tool defaults unless set below"
    )
    .unwrap();
    for line in cfg.emit().lines() {
        writeln!(out, "#   {line}").unwrap();
    }
}

fn sweep_rows(out: &mut String, name: &str, points: &[SweepPoint]) {
    writeln!(
        out,
        "{name},status,s_c_mean,s_p_mean,discord_mean,log_negativity_mean,min_physical_eigenvalue,error"
    )
    .unwrap();
    for p in points {
        match &p.outcome {
            Ok(s) => writeln!(
                out,
                "{},ok,{},{},{},{},{},",
                num(p.value),
                num(s.summary.sync.s_c),
                opt(s.summary.sync.s_p),
                num(s.summary.correlations.discord),
                num(s.summary.correlations.log_negativity),
                num(s.min_physical_eigenvalue),
            ),
            Err(e) => writeln!(
                out,
                "{},failed,nan,nan,nan,nan,nan,{}",
                num(p.value),
                e.replace([',', '\n'], ";")
            ),
        }
        .unwrap();
    }
}

/// Renders an experiment outcome, including the provenance header.
pub fn render_csv(cfg: &ExperimentConfig, outcome: &Outcome) -> String {
    let mut out = String::new();
    header(&mut out, cfg);
    match outcome {
        Outcome::PairTrace(trace) => {
            writeln!(
                out,
                "t,s_c,s_p,var_qminus,var_pminus,var_pminus_rot,discord,log_negativity,\
                 heisenberg_ok,phase_below_complete,squeezed,cross_covariance,min_physical_eigenvalue"
            )
            .unwrap();
            let r = &trace.record;
            for k in 0..r.sync.len() {
                let (s, c, b) = (&r.sync[k], &r.correlations[k], &trace.bounds[k]);
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    num(s.t),
                    num(s.s_c),
                    opt(s.s_p()),
                    num(s.var_qminus),
                    num(s.var_pminus),
                    opt(s.phase.map(|p| p.var_pminus_rot)),
                    num(c.discord),
                    num(c.log_negativity),
                    flag(Some(b.heisenberg_ok)),
                    flag(b.phase_below_complete),
                    flag(b.squeezing),
                    num(r.cross_covariance[k]),
                    num(r.min_physical_eigenvalue[k]),
                )
                .unwrap();
            }
            let m = &trace.summary;
            writeln!(
                out,
                "# summary: s_c_mean={} s_p_mean={} discord_mean={} log_negativity_mean={} window=[{}, {}]",
                num(m.sync.s_c),
                opt(m.sync.s_p),
                num(m.correlations.discord),
                num(m.correlations.log_negativity),
                num(m.window.0),
                num(m.window.1),
            )
            .unwrap();
        }
        Outcome::SweepMu(points) => sweep_rows(&mut out, "mu", points),
        Outcome::SweepNb(points) => sweep_rows(&mut out, "n_b", points),
        Outcome::Chain(profile) => {
            writeln!(out, "h,s_c_mean,s_c_mean_mirror").unwrap();
            for (h, s, mirror) in profile.rows() {
                writeln!(out, "{h},{},{}", num(s), num(mirror)).unwrap();
            }
        }
        Outcome::OuCheck(r) => {
            writeln!(out, "entry,analytic,numerical,deviation").unwrap();
            for (name, (i, j)) in [("qq", (0, 0)), ("qp", (0, 1)), ("pp", (1, 1))] {
                let (a, n) = (r.analytic[(i, j)], r.numerical[(i, j)]);
                writeln!(out, "{name},{},{},{}", num(a), num(n), num((a - n).abs())).unwrap();
            }
            writeln!(
                out,
                "# max_deviation={} anisotropy={} bound_holds={}",
                num(r.max_deviation),
                num(r.anisotropy),
                r.bound_holds
            )
            .unwrap();
        }
    }
    out
}
