//! Command implementations behind the `dilagap` binary. Each returns a
//! [`RunReport`] that the binary prints as JSON.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::certificate::{check_certificate, square_cover_points, CertificateParams};
use crate::closure::{
    classify_stability_in, iterate, ClosureBudgets, ClosureMode, StabilityVerdict, StopReason,
};
use crate::cover::{density_profile, is_eps_cover_exact, region_a};
use crate::error::{Error, Result};
use crate::geometry::{format_rational, rational_to_f64, ExactPoint, Rational};
use crate::graph::{
    check_paths_in_ellipses, dilation, is_triangulation, shortest_path, validate_plane,
};
use crate::io::{read_graph, write_points, PointFile};
use crate::point_set::PointSet;
use crate::svg;

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub args: Value,
    pub result: Value,
    pub stop_reason: Option<String>,
    pub files_written: Vec<String>,
    pub wall_time_ms: f64,
}

struct Outcome {
    result: Value,
    stop_reason: Option<String>,
    files: Vec<PathBuf>,
}

impl Outcome {
    fn new(result: Value) -> Self {
        Outcome {
            result,
            stop_reason: None,
            files: Vec::new(),
        }
    }
}

fn timed(command: &str, args: Value, body: impl FnOnce() -> Result<Outcome>) -> Result<RunReport> {
    let start = Instant::now();
    let out = body()?;
    Ok(RunReport {
        command: command.to_string(),
        args,
        result: out.result,
        stop_reason: out.stop_reason,
        files_written: out.files.iter().map(|p| p.display().to_string()).collect(),
        wall_time_ms: start.elapsed().as_secs_f64() * 1000.0,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_set(input: &Path) -> Result<PointSet> {
    Ok(PointSet::from_points(PointFile::read(input)?.points))
}

fn point_strings(p: &ExactPoint) -> [String; 2] {
    [format_rational(&p.x), format_rational(&p.y)]
}

fn budgets_json(b: &ClosureBudgets) -> Value {
    json!({
        "max_points": b.max_points,
        "max_rounds": b.max_rounds,
        "max_coordinate_bits": b.max_coordinate_bits,
    })
}

fn stop_message(stop: &StopReason) -> String {
    match stop {
        StopReason::FixedPoint { round } => format!(
            "fixed point at round {}: P^{round} equals its own closure",
            round + 1
        ),
        StopReason::MaxRounds => "stopped at the round limit".into(),
        StopReason::MaxPoints { attempted_round } => {
            format!("round {attempted_round} exceeds the point budget")
        }
        StopReason::MaxCoordinateBits {
            attempted_round,
            bits,
        } => format!("round {attempted_round} needs {bits}-bit coordinates, over the budget"),
    }
}

/// Iterates the closure and writes `round_<k>.txt` for every computed round.
pub fn cmd_iterate(
    input: &Path,
    mode: ClosureMode,
    budgets: ClosureBudgets,
    out_dir: &Path,
) -> Result<RunReport> {
    let args = json!({
        "input": input.display().to_string(),
        "mode": mode,
        "budgets": budgets_json(&budgets),
        "out_dir": out_dir.display().to_string(),
    });
    timed("iterate", args, || {
        let seed = read_set(input)?;
        let it = iterate(&seed, mode, budgets);
        fs::create_dir_all(out_dir)
            .map_err(|e| Error::Io(format!("{}: {e}", out_dir.display())))?;
        let mut files = Vec::new();
        for (k, set) in it.rounds.iter().enumerate() {
            let path = out_dir.join(format!("round_{k}.txt"));
            write_points(&path, &format!("P^{k}, {} points", set.len()), set)?;
            files.push(path);
        }
        let rounds: Vec<Value> = it
            .rounds
            .iter()
            .enumerate()
            .map(|(k, set)| {
                json!({
                    "round": k,
                    "points": set.len(),
                    "max_coordinate_bits": set.max_coordinate_bits(),
                })
            })
            .collect();
        Ok(Outcome {
            result: json!({
                "rounds": rounds,
                "stop": it.stop,
                "message": stop_message(&it.stop),
            }),
            stop_reason: Some(it.stop.label().to_string()),
            files,
        })
    })
}

pub fn cmd_classify(input: &Path, mode: ClosureMode, budgets: ClosureBudgets) -> Result<RunReport> {
    let args = json!({
        "input": input.display().to_string(),
        "mode": mode,
        "budgets": budgets_json(&budgets),
    });
    timed("classify", args, || {
        let seed = read_set(input)?;
        let verdict = classify_stability_in(&seed, mode, budgets);
        let (result, stop) = match verdict {
            StabilityVerdict::Stable => {
                (json!({ "verdict": "stable", "points": seed.len() }), None)
            }
            StabilityVerdict::StabilizesAtRound { round, fixed_point } => (
                json!({
                    "verdict": "stabilizes_at_round",
                    "round": round,
                    "fixed_point_points": fixed_point.len(),
                    "fixed_point": fixed_point.iter().map(point_strings).collect::<Vec<_>>(),
                }),
                None,
            ),
            StabilityVerdict::BudgetExceeded {
                last_round,
                last_size,
            } => (
                json!({
                    "verdict": "budget_exceeded",
                    "last_round": last_round,
                    "last_size": last_size,
                }),
                Some("budget_exceeded".to_string()),
            ),
        };
        Ok(Outcome {
            result,
            stop_reason: stop,
            files: Vec::new(),
        })
    })
}

/// Plane check, dilation with witness path, and the ellipse containment
/// check at the measured dilation.
pub fn cmd_dilation(input: &Path, svg_out: Option<&Path>) -> Result<RunReport> {
    let args = json!({
        "input": input.display().to_string(),
        "svg": svg_out.map(|p| p.display().to_string()),
    });
    timed("dilation", args, || {
        let g = read_graph(input)?;
        let mut files = Vec::new();
        if let Some(path) = svg_out {
            write_file(path, &svg::render_graph(&g))?;
            files.push(path.to_path_buf());
        }
        let violations = validate_plane(&g);
        if !violations.is_empty() {
            return Ok(Outcome {
                result: json!({
                    "vertices": g.vertices().len(),
                    "edges": g.edge_count(),
                    "plane": false,
                    "violations": violations,
                }),
                stop_reason: None,
                files,
            });
        }
        let report = dilation(&g)?;
        let (u, v) = report.witness_pair;
        let path = shortest_path(&g, u, v)?;
        let ellipse = check_paths_in_ellipses(&g, report.dilation.max(1.0))?;
        Ok(Outcome {
            result: json!({
                "vertices": g.vertices().len(),
                "edges": g.edge_count(),
                "plane": true,
                "triangulation": is_triangulation(&g),
                "dilation": report.dilation,
                "witness_pair": [u, v],
                "witness_points": [point_strings(&g.vertices()[u]), point_strings(&g.vertices()[v])],
                "distance": report.distance,
                "path_length": report.path_length,
                "path": path.vertex_indices,
                "ellipse_check": {
                    "delta": ellipse.delta,
                    "passed": ellipse.passed(),
                    "worst_slack": ellipse.worst_slack,
                    "violations": ellipse.violations.len(),
                },
            }),
            stop_reason: None,
            files,
        })
    })
}

pub fn cmd_density(
    input: &Path,
    k_max: usize,
    pitch: Option<f64>,
    budgets: ClosureBudgets,
    svg_out: Option<&Path>,
) -> Result<RunReport> {
    let args = json!({
        "input": input.display().to_string(),
        "k_max": k_max,
        "grid": pitch,
        "budgets": budgets_json(&budgets),
        "svg": svg_out.map(|p| p.display().to_string()),
    });
    timed("density", args, || {
        let seed = read_set(input)?;
        let prof = density_profile(&seed, k_max, pitch, budgets)?;
        let mut files = Vec::new();
        if let Some(path) = svg_out {
            let last = prof.iteration.as_ref().map_or(&seed, |it| it.last());
            write_file(path, &svg::render_region(&seed, &prof.region, last))?;
            files.push(path.to_path_buf());
        }
        let radii: Vec<f64> = prof.entries.iter().map(|e| e.radius).collect();
        let non_increasing = radii.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12));
        Ok(Outcome {
            result: json!({
                "region_a": prof.region.polygon().iter().map(point_strings).collect::<Vec<_>>(),
                "region_diameter": prof.region.diameter(),
                "pitch": prof.pitch,
                "samples": prof.samples.len(),
                "profile": prof.entries,
                "non_increasing": non_increasing,
                "budget_stop": prof.budget_stop,
            }),
            stop_reason: prof.budget_stop.as_ref().map(|s| s.label().to_string()),
            files,
        })
    })
}

pub fn cmd_certify(params: CertificateParams, svg_out: Option<&Path>) -> Result<RunReport> {
    let args = json!({
        "params": params,
        "svg": svg_out.map(|p| p.display().to_string()),
    });
    timed("certify", args, || {
        let report = check_certificate(&params);
        let mut files = Vec::new();
        if let Some(path) = svg_out {
            write_file(path, &svg::render_certificate(&report))?;
            files.push(path.to_path_buf());
        }
        let result = serde_json::to_value(&report).map_err(|e| Error::Io(e.to_string()))?;
        Ok(Outcome {
            stop_reason: None,
            files,
            result,
        })
    })
}

/// Writes `n` evenly spaced points on the boundary of the square of side
/// `side` and, when `samples > 0`, measures their exact cover radius
/// against `samples` evenly spaced boundary points.
pub fn cmd_gen_square(side: &Rational, n: usize, samples: usize, out: &Path) -> Result<RunReport> {
    let args = json!({
        "side": format_rational(side),
        "n": n,
        "samples": samples,
        "out": out.display().to_string(),
    });
    timed("gen-square", args, || {
        let cover = square_cover_points(side, n)?;
        write_points(
            out,
            &format!(
                "{n} points on the boundary of the square of side {}",
                format_rational(side)
            ),
            &cover.points,
        )?;
        let mut result = json!({
            "points": cover.points.len(),
            "spacing": format_rational(&cover.spacing),
            "radius": format_rational(&cover.radius),
            "radius_f64": rational_to_f64(&cover.radius),
        });
        if samples > 0 {
            let targets = square_cover_points(side, samples)?;
            let check =
                is_eps_cover_exact(&cover.points, targets.points.as_slice(), &cover.radius)?;
            let r2 = check.radius_squared.expect("exact targets");
            result["measured_radius_squared"] = json!(format_rational(&r2));
            result["measured_radius"] = json!(check.radius_achieved);
            result["radius_matches"] = json!(r2 == &cover.radius * &cover.radius);
            result["is_cover"] = json!(check.is_cover);
        }
        Ok(Outcome {
            files: vec![out.to_path_buf()],
            ..Outcome::new(result)
        })
    })
}

/// Rounded regular polygon with first vertex `(0, 1)`.
pub fn cmd_gen_polygon(n: usize, denominator: u64, out: &Path) -> Result<RunReport> {
    let args = json!({ "n": n, "denominator": denominator, "out": out.display().to_string() });
    timed("gen-polygon", args, || {
        if n < 3 {
            return Err(Error::InvalidCount(n));
        }
        if denominator == 0 {
            return Err(Error::InvalidParams("denominator must be positive".into()));
        }
        let set = PointSet::regular_polygon(n, denominator);
        write_points(
            out,
            &format!("regular {n}-gon on the unit circle, coordinates rounded to 1/{denominator}"),
            &set,
        )?;
        Ok(Outcome {
            files: vec![out.to_path_buf()],
            ..Outcome::new(json!({ "points": set.len() }))
        })
    })
}

#[derive(Debug, Clone)]
pub enum RenderSource {
    Points(PathBuf),
    Graph(PathBuf),
    /// Region A of a five-point seed, with closure round `round` on top.
    Region {
        input: PathBuf,
        round: usize,
        budgets: ClosureBudgets,
    },
    Certificate(CertificateParams),
}

pub fn cmd_render(source: &RenderSource, svg_out: &Path) -> Result<RunReport> {
    let args = match source {
        RenderSource::Points(p) => json!({ "kind": "points", "input": p.display().to_string() }),
        RenderSource::Graph(p) => json!({ "kind": "graph", "input": p.display().to_string() }),
        RenderSource::Region {
            input,
            round,
            budgets,
        } => json!({
            "kind": "region",
            "input": input.display().to_string(),
            "round": round,
            "budgets": budgets_json(budgets),
        }),
        RenderSource::Certificate(params) => json!({ "kind": "certificate", "params": params }),
    };
    timed("render", args, || {
        let mut result = json!({});
        let mut stop_reason = None;
        let text = match source {
            RenderSource::Points(p) => {
                let set = read_set(p)?;
                result["points"] = json!(set.len());
                svg::render_points(&set)
            }
            RenderSource::Graph(p) => {
                let g = read_graph(p)?;
                result["vertices"] = json!(g.vertices().len());
                result["edges"] = json!(g.edge_count());
                svg::render_graph(&g)
            }
            RenderSource::Region {
                input,
                round,
                budgets,
            } => {
                let seed = read_set(input)?;
                let region = region_a(&seed)?;
                let capped = ClosureBudgets {
                    max_rounds: (*round).clamp(1, budgets.max_rounds),
                    ..*budgets
                };
                let it = iterate(&seed, ClosureMode::Segments, capped);
                let shown = it.rounds.len().min(round + 1) - 1;
                if shown < *round && !matches!(it.stop, StopReason::FixedPoint { .. }) {
                    stop_reason = Some(it.stop.label().to_string());
                }
                result["round_shown"] = json!(shown);
                result["points"] = json!(it.rounds[shown].len());
                svg::render_region(&seed, &region, &it.rounds[shown])
            }
            RenderSource::Certificate(params) => {
                let report = check_certificate(params);
                result["passed"] = json!(report.passed);
                svg::render_certificate(&report)
            }
        };
        write_file(svg_out, &text)?;
        Ok(Outcome {
            result,
            stop_reason,
            files: vec![svg_out.to_path_buf()],
        })
    })
}
