//! Task planning (config -> validated plan) and execution (plan -> CSV and
//! JSON artifacts). Planning only touches the config so that every
//! validation problem is collected before any work starts; execution is
//! pure library calls plus a single-writer output pass.

use crate::config::{axis_from_config, ConfigMap, ModelSpec, TimeGrid};
use crate::manifest::OutputWriter;
use nhband::{
    critical_set, detect_cusps, dqpt_report, dtop, geometric_phase, phase_diagram, quench_trace,
    simulate_dilated, AxisSpec, DilationConfig, Error,
};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug)]
pub enum TaskPlan {
    Spectrum {
        n_k: usize,
    },
    PhaseDiagram {
        axis1: AxisSpec,
        axis2: AxisSpec,
        n_k: usize,
    },
    Quench {
        grid: TimeGrid,
        n_k: usize,
        n_max: i32,
        cusp_threshold: f64,
    },
    Dtop {
        grid: TimeGrid,
        n_k: usize,
        heatmap_n_k: usize,
    },
    Dilation {
        config: DilationConfig,
    },
    Report {
        n_k: usize,
        n_max: i32,
    },
}

impl TaskPlan {
    pub fn from_config(task: &str, cfg: &mut ConfigMap, spec: &ModelSpec) -> Option<TaskPlan> {
        match task {
            "spectrum" => {
                let n_k = cfg.take_usize("grid.n_k", 1025);
                if n_k < 2 {
                    cfg.error("grid.n_k", format!("`grid.n_k` must be >= 2, got {n_k}"));
                }
                Some(TaskPlan::Spectrum { n_k })
            }
            "phase-diagram" => {
                let names = spec.param_names();
                let axis1 = axis_from_config(cfg, "axis1", names);
                let axis2 = axis_from_config(cfg, "axis2", names);
                let n_k = cfg.take_usize("grid.n_k", 1025);
                if n_k < 2 {
                    cfg.error("grid.n_k", format!("`grid.n_k` must be >= 2, got {n_k}"));
                }
                Some(TaskPlan::PhaseDiagram {
                    axis1: axis1?,
                    axis2: axis2?,
                    n_k,
                })
            }
            "quench" => {
                let grid = TimeGrid::from_config(cfg, 10.0, 1e-3);
                let n_k = cfg.take_usize("grid.n_k", 512);
                let n_max = cfg.take_usize("quench.n_max", 8) as i32;
                let cusp_threshold = cfg.take_f64("quench.cusp_threshold", 50.0);
                if n_k < 64 {
                    cfg.error("grid.n_k", format!("`grid.n_k` must be >= 64, got {n_k}"));
                }
                if cusp_threshold <= 0.0 {
                    cfg.error(
                        "quench.cusp_threshold",
                        "`quench.cusp_threshold` must be > 0".into(),
                    );
                }
                Some(TaskPlan::Quench {
                    grid,
                    n_k,
                    n_max,
                    cusp_threshold,
                })
            }
            "dtop" => {
                let grid = TimeGrid::from_config(cfg, 10.0, 0.05);
                let n_k = cfg.take_usize("grid.n_k", 512);
                let heatmap_n_k = cfg.take_usize("heatmap.n_k", 0);
                if n_k < 256 {
                    cfg.error("grid.n_k", format!("`grid.n_k` must be >= 256, got {n_k}"));
                }
                Some(TaskPlan::Dtop {
                    grid,
                    n_k,
                    heatmap_n_k,
                })
            }
            "dilation-check" => {
                let config = DilationConfig {
                    k: cfg.take_f64("dilation.k", 0.0),
                    m0: cfg.take_f64("dilation.m0", 20.0),
                    t_max: cfg.take_f64("dilation.t_max", 3.0),
                    n_steps: cfg.take_usize("dilation.n_steps", 3000),
                    ..DilationConfig::default()
                };
                if config.m0 <= 1.0 {
                    cfg.error("dilation.m0", "`dilation.m0` must be > 1".into());
                }
                if config.t_max <= 0.0 {
                    cfg.error("dilation.t_max", "`dilation.t_max` must be > 0".into());
                }
                if config.n_steps < 16 {
                    cfg.error("dilation.n_steps", "`dilation.n_steps` must be >= 16".into());
                }
                Some(TaskPlan::Dilation { config })
            }
            "report" => {
                let n_k = cfg.take_usize("grid.n_k", 4097);
                let n_max = cfg.take_usize("report.n_max", 8) as i32;
                if n_k < 2 {
                    cfg.error("grid.n_k", format!("`grid.n_k` must be >= 2, got {n_k}"));
                }
                Some(TaskPlan::Report { n_k, n_max })
            }
            _ => unreachable!("task names come from the clap subcommand"),
        }
    }

    pub fn execute(
        &self,
        spec: &ModelSpec,
        out: &mut OutputWriter,
    ) -> Result<(), crate::TaskFailure> {
        match self {
            TaskPlan::Spectrum { n_k } => {
                let model = spec.build()?;
                let mut csv = String::from("k,re_e,im_e\n");
                for i in 0..*n_k {
                    let k = -PI + 2.0 * PI * i as f64 / (*n_k as f64 - 1.0);
                    let e = model.dispersion(k);
                    csv.push_str(&format!("{k},{},{}\n", e.re, e.im));
                }
                out.write("spectrum.csv", csv.as_bytes())?;
            }
            TaskPlan::PhaseDiagram { axis1, axis2, n_k } => {
                let a1 = axis1.name.clone();
                let a2 = axis2.name.clone();
                let grid = phase_diagram(
                    |x, y| spec.with_param(&a1, x).with_param(&a2, y).build(),
                    axis1.clone(),
                    axis2.clone(),
                    *n_k,
                )?;
                let mut csv = format!("{},{},w\n", axis1.name, axis2.name);
                for i in 0..axis1.steps {
                    for j in 0..axis2.steps {
                        let w = match grid.values[i * axis2.steps + j] {
                            Some(w) => format!("{w}"),
                            None => "boundary".to_string(),
                        };
                        csv.push_str(&format!("{},{},{w}\n", axis1.value(i), axis2.value(j)));
                    }
                }
                out.write("phase_diagram.csv", csv.as_bytes())?;
            }
            TaskPlan::Quench {
                grid,
                n_k,
                n_max,
                cusp_threshold,
            } => {
                let model = spec.build()?;
                let times = grid.values();
                let trace = quench_trace(&model, &times, *n_k)?;
                let mut csv = String::from("t,g\n");
                for (t, g) in trace.times.iter().zip(&trace.rate) {
                    csv.push_str(&format!("{t},{g}\n"));
                }
                out.write("quench.csv", csv.as_bytes())?;

                let predicted = critical_set(&model, 1..=*n_max, 1e-10)?;
                let cusps = detect_cusps(&trace, *cusp_threshold).unwrap_or_default();
                #[derive(Serialize)]
                struct Sidecar {
                    predicted: nhband::CriticalSet,
                    detected_cusps: Vec<f64>,
                }
                out.write_json(
                    "critical_times.json",
                    &Sidecar {
                        predicted,
                        detected_cusps: cusps,
                    },
                )?;
            }
            TaskPlan::Dtop {
                grid,
                n_k,
                heatmap_n_k,
            } => {
                let model = spec.build()?;
                let mut csv = String::from("t,nu,nu_integral\n");
                for t in grid.values() {
                    if t <= 0.0 {
                        continue;
                    }
                    match dtop(&model, t, *n_k) {
                        Ok(v) => csv.push_str(&format!("{t},{},{}\n", v.nu, v.nu_integral)),
                        // the series legitimately skips critical times and
                        // unresolvable points right next to them
                        Err(Error::CriticalTime { .. }) | Err(Error::InsufficientGrid { .. }) => {}
                        Err(e) => return Err(e.into()),
                    }
                }
                out.write("dtop.csv", csv.as_bytes())?;

                if *heatmap_n_k >= 2 {
                    let mut csv = String::from("k,t,phi_g\n");
                    for t in grid.values() {
                        if t <= 0.0 {
                            continue;
                        }
                        for i in 0..*heatmap_n_k {
                            let k = -PI + 2.0 * PI * i as f64 / (*heatmap_n_k as f64 - 1.0);
                            match geometric_phase(&model, k, t) {
                                Ok(phi) => csv.push_str(&format!("{k},{t},{phi}\n")),
                                Err(Error::UndefinedPhase(_)) => {}
                                Err(e) => return Err(e.into()),
                            }
                        }
                    }
                    out.write("phase_map.csv", csv.as_bytes())?;
                }
            }
            TaskPlan::Dilation { config } => {
                let model = spec.build()?;
                let run = simulate_dilated(&model, config)?;
                let mut csv = String::from(
                    "t,infidelity,herm_residual,a0,a1,a2,a3,b0,b1,b2,b3\n",
                );
                for s in &run.samples {
                    csv.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{},{},{}\n",
                        s.t,
                        s.infidelity,
                        s.herm_residual,
                        s.a[0],
                        s.a[1],
                        s.a[2],
                        s.a[3],
                        s.b[0],
                        s.b[1],
                        s.b[2],
                        s.b[3]
                    ));
                }
                out.write("dilation.csv", csv.as_bytes())?;

                #[derive(Serialize)]
                struct Summary {
                    m0_used: f64,
                    max_infidelity: f64,
                    norm_drift: f64,
                    n_samples: usize,
                }
                out.write_json(
                    "dilation_summary.json",
                    &Summary {
                        m0_used: run.m0_used,
                        max_infidelity: run.max_infidelity,
                        norm_drift: run.norm_drift,
                        n_samples: run.samples.len(),
                    },
                )?;
            }
            TaskPlan::Report { n_k, n_max } => {
                let model = spec.build()?;
                let report = dqpt_report(&model, *n_k, 1..=*n_max)?;
                out.write_json("report.json", &report)?;
            }
        }
        Ok(())
    }
}
