use anyhow::{anyhow, Context};
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use coneoff_core::coxeter::{
    ball, normal_form, reduce, separating_modulus, unreduced_witness, verify_separating, Racg, RacgJson,
};
use coneoff_core::graphs::{
    check_covering, girth, lps_voltages, spectral_gap, voltage_cover, GraphJson, Multigraph,
    VoltageAssignment, VoltageJson,
};
use coneoff_core::hyperbolic::{
    check_realization, choose_b_r, prism_combinatorics, prism_geometry, realize_polyhedron_with,
    sigma_margin, GeometricConstants, SolverOptions,
};
use coneoff_core::pipeline::{
    certify, lambda_voltages, link_check, validate_params, CertifyOptions, ConstructionParams,
};
use coneoff_core::Error;

use crate::args::{Cli, Command, Common, Format, RacgVerb};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input: exit code 2.
    Input(anyhow::Error),
    Failure(anyhow::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parameter(_)
            | Error::Structural(_)
            | Error::Json(_)
            | Error::Io(_)
            | Error::TooLarge { .. }
            | Error::InvalidCrossing(..)
            | Error::AndreevViolation(_) => CliError::Input(e.into()),
            _ => CliError::Failure(e.into()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn input<E: Into<anyhow::Error>>(e: E) -> CliError {
    CliError::Input(e.into())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(input)?;
    serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(input)
}

/// Resolved flags: explicit flags, then the config file, then defaults.
struct Settings {
    params: ConstructionParams,
    format: Format,
    out: Option<std::path::PathBuf>,
}

fn settings(common: Common) -> CliResult<Settings> {
    let merged = match &common.config {
        Some(path) => {
            let file: Common = read_json(path)?;
            common.or(file)
        }
        None => common,
    };
    let d = ConstructionParams::default();
    Ok(Settings {
        params: ConstructionParams {
            k: merged.k.unwrap_or(d.k),
            q: merged.q.unwrap_or(d.q),
            level: merged.level.unwrap_or(d.level),
            b_fraction: merged.b_fraction.unwrap_or(d.b_fraction),
            r_margin: merged.r_margin.unwrap_or(d.r_margin),
            seed: merged.seed.unwrap_or(d.seed),
            tolerance: merged.tolerance.unwrap_or(d.tolerance),
            structural: merged.structural,
        },
        format: merged.format.unwrap_or(Format::Json),
        out: merged.out,
    })
}

fn emit(s: &Settings, json_value: &impl Serialize, text: String) -> CliResult<()> {
    let body = match s.format {
        Format::Json => serde_json::to_string_pretty(json_value).map_err(|e| CliError::Failure(e.into()))? + "\n",
        Format::Text => text,
    };
    match &s.out {
        Some(path) => fs::write(path, body)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(CliError::Failure),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

/// A graph file, or a voltage file whose derived cover is used.
fn load_graph(path: &Path) -> CliResult<Multigraph> {
    let v: Value = read_json(path)?;
    if v.get("voltages").is_some() {
        let vj: VoltageJson = serde_json::from_value(v).map_err(input)?;
        Ok(voltage_cover(&VoltageAssignment::from_json(&vj)?).0)
    } else {
        let gj: GraphJson = serde_json::from_value(v).map_err(input)?;
        Ok(Multigraph::from_json(&gj)?.0)
    }
}

fn load_racg(path: &Path) -> CliResult<Racg> {
    let j: RacgJson = read_json(path)?;
    Ok(Racg::from_json(&j)?)
}

fn solver(p: &ConstructionParams) -> SolverOptions {
    SolverOptions {
        seed: p.seed,
        tolerance: p.tolerance,
        ..Default::default()
    }
}

fn modulus(p: &ConstructionParams) -> CliResult<u64> {
    p.q.checked_pow(p.level)
        .ok_or_else(|| input(anyhow!("q^level overflows")))
}

pub fn run(cli: Cli) -> CliResult<bool> {
    let s = settings(cli.common)?;
    let p = &s.params;
    match cli.command {
        Command::Prism => {
            let label = u32::try_from(p.k).map_err(input)?;
            let rp = realize_polyhedron_with(&prism_combinatorics(label)?, &solver(p))?;
            let report = rp.report();
            let ok = check_realization(&rp).is_ok();
            let ap = &rp.poly;
            let value = json!({
                "polyhedron": ap.to_json(),
                "normals": rp.normals.iter().map(|e| e.as_slice().to_vec()).collect::<Vec<_>>(),
                "gram": (0..ap.face_count()).map(|i| (0..ap.face_count()).map(|j| rp.gram[(i, j)]).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "vertices": rp.vertices.iter().map(|v| json!({
                    "faces": v.faces.iter().map(|&f| ap.faces[f].id.clone()).collect::<Vec<_>>(),
                    "point": v.point.as_slice(),
                })).collect::<Vec<_>>(),
                "report": report,
            });
            let mut text = format!("prism k={} restart={}\n", p.k, rp.restart);
            for (i, f) in ap.faces.iter().enumerate() {
                let row: Vec<String> = (0..ap.face_count()).map(|j| format!("{:9.5}", rp.gram[(i, j)])).collect();
                let _ = writeln!(text, "{:>8} {}", f.id, row.join(" "));
            }
            let _ = writeln!(
                text,
                "residual {:.3e} signature ({}, {}, {}) max non-adjacent {:.6}",
                report.residual, report.positive, report.negative, report.near_zero, report.max_nonadjacent
            );
            emit(&s, &value, text)?;
            Ok(ok)
        }
        Command::Constants => {
            let g = prism_geometry(p.k, &solver(p))?;
            let gc = choose_b_r(&g.constants, p.b_fraction, p.r_margin)?;
            let (sigma, sigma_ok) = sigma_margin(&g.realized, &gc)?;
            let value = json!({
                "constants": gc,
                "audit": g.constants.audit,
                "sigma_distance": sigma,
                "sigma_margin_ok": sigma_ok,
            });
            let text = format!(
                "C {:.6}\nL {:.6}\nmu {:.6}\nD {:.6}\nb {:.7}\nc {:.6}\nR {:.4}\ngirth_target {}\nA_threshold {:.4}\nsigma_distance {:.6}\n",
                gc.c_interior, gc.l_mirror, gc.mu, gc.d_mirror, gc.b, gc.c, gc.r, gc.girth_target, gc.a_threshold, sigma
            );
            emit(&s, &value, text)?;
            Ok(sigma_ok)
        }
        Command::Lps { expand } => {
            let va = lps_voltages(p.p(), modulus(p)?)?;
            let (g, _) = voltage_cover(&va);
            let text = format!(
                "LPS p={} modulus={} group order {} -> {} vertices, {} edges, girth {}\n",
                p.p(),
                modulus(p)?,
                va.group.order(),
                g.vertex_count(),
                g.edge_count(),
                girth(&g).map_or("none".into(), |x| x.to_string())
            );
            if expand {
                emit(&s, &g.to_json(), text)?;
            } else {
                emit(&s, &va.to_json(), text)?;
            }
            Ok(true)
        }
        Command::Girth { input: path } => {
            let g = load_graph(&path)?;
            let gi = girth(&g);
            let value = json!({"vertices": g.vertex_count(), "edges": g.edge_count(), "girth": gi});
            let text = format!("girth {}\n", gi.map_or("none (acyclic)".into(), |x| x.to_string()));
            emit(&s, &value, text)?;
            Ok(true)
        }
        Command::Spectrum { input: path } => {
            let g = load_graph(&path)?;
            let l1 = spectral_gap(&g)?;
            let ok = l1.is_some_and(|x| x > 0.5);
            let value = json!({"vertices": g.vertex_count(), "lambda1": l1, "gap_exceeds_half": ok});
            let text = format!("lambda1 {}\n", l1.map_or("n/a".into(), |x| format!("{x:.9}")));
            emit(&s, &value, text)?;
            Ok(ok)
        }
        Command::Cover { input: path } => {
            let vj: VoltageJson = read_json(&path)?;
            let va = VoltageAssignment::from_json(&vj)?;
            let (cover, map) = voltage_cover(&va);
            let ok = check_covering(&cover, &va.base, &map)?;
            let value = json!({"cover": cover.to_json(), "sheets": va.group.order(), "covering_ok": ok});
            let text = format!(
                "cover: {} vertices, {} edges, {} sheets, covering map {}\n",
                cover.vertex_count(),
                cover.edge_count(),
                va.group.order(),
                if ok { "ok" } else { "BROKEN" }
            );
            emit(&s, &value, text)?;
            Ok(ok)
        }
        Command::ConeLinks { input: path } => {
            let phi = match &path {
                Some(path) => {
                    let vj: VoltageJson = read_json(path)?;
                    VoltageAssignment::from_json(&vj)?
                }
                None => {
                    validate_params(p)?;
                    lambda_voltages(p)?.0
                }
            };
            let k = phi.base.edge_count();
            let l = link_check(k, &phi, "full")?;
            let ok = l.covering_ok
                && l.cone_vertices == l.isomorphic_links
                && l.euler_cover == l.sheets as i64 * l.euler_base;
            let text = format!(
                "T_n: {} cells over {} sheets, chi {} = {} x {}\ncone vertices {}, links isomorphic {}\ncovering map {}\n",
                l.cover_cells,
                l.sheets,
                l.euler_cover,
                l.sheets,
                l.euler_base,
                l.cone_vertices,
                l.isomorphic_links,
                if l.covering_ok { "ok" } else { "BROKEN" }
            );
            emit(&s, &l, text)?;
            Ok(ok)
        }
        Command::Racg { verb } => racg(&s, verb),
        Command::Certify { constants, timing } => {
            let constants_override = match constants {
                Some(path) => Some(read_json::<GeometricConstants>(&path)?),
                None => None,
            };
            let report = certify(p, &CertifyOptions { constants_override, timing })?;
            emit(&s, &report, report.to_text())?;
            Ok(report.passed())
        }
    }
}

fn racg(s: &Settings, verb: RacgVerb) -> CliResult<bool> {
    match verb {
        RacgVerb::Reduce { input: path, word } => {
            let w = load_racg(&path)?;
            w.check_word(&word)?;
            let reduced = reduce(&w, &word);
            let nf = normal_form(&w, &word);
            let witness = unreduced_witness(&w, &word);
            let value = json!({"word": word, "reduced": reduced, "normal_form": nf, "witness": witness});
            let text = format!(
                "reduced {:?}\nnormal_form {:?}\n{}\n",
                reduced,
                nf,
                match &witness {
                    Some(wt) => format!("unreduced: positions {} and {}", wt.first, wt.second),
                    None => "already reduced".into(),
                }
            );
            emit(s, &value, text)?;
            Ok(true)
        }
        RacgVerb::Ball { input: path, radius, list } => {
            let w = load_racg(&path)?;
            let b = ball(&w, radius)?;
            let value = if list {
                json!({"radius": radius, "size": b.len(), "elements": b})
            } else {
                json!({"radius": radius, "size": b.len()})
            };
            let mut text = format!("ball radius {radius}: {} elements\n", b.len());
            if list {
                for x in &b {
                    let _ = writeln!(text, "{x:?}");
                }
            }
            emit(s, &value, text)?;
            Ok(true)
        }
        RacgVerb::Modulus { input: path, radius } => {
            let w = load_racg(&path)?;
            let rec = separating_modulus(&w, radius)?;
            let ok = verify_separating(&w, &rec);
            let text = format!(
                "modulus {} separates the ball of radius {} ({} elements), recheck {}\n",
                rec.modulus,
                radius,
                rec.entries.len(),
                if ok { "ok" } else { "FAILED" }
            );
            emit(s, &json!({"record": rec, "recheck": ok}), text)?;
            Ok(ok)
        }
    }
}
