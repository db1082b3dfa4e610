use std::io::{self, Write};
use std::path::PathBuf;

use focal_core::causal::{find_lightlike_points, split_arcs};
use focal_core::chart::{lookup_chart, FocalChart};
use focal_core::error::FocalError;
use focal_core::focal_desitter::{
    g_cuspidal, h_cuspidal, s31_ld_extract, spherical_focal_curve, spherical_singular_points,
    Branch, SphericalSingularities,
};
use focal_core::focal_r31::{cuspidal_curve, ld_extract, mu0};
use focal_core::frenet::{frame_r31, frame_s21, frame_s31, S31Variant};
use focal_core::singularity::{classify, contact_sphere_type, dist_jet, local_model};
use focal_core::verify::run_suite;
use focal_core::{Curve, MVector, Space};

use crate::args::{ChartKind, Cli, Command, RunConfig};
use crate::mesh::{build_mesh, build_stitched, linspace, MeshBundle};
use crate::output::{csv_writer, emit, num, opt_num};
use crate::CliError;

pub struct Ctx<'a> {
    pub cli: &'a Cli,
    pub cfg: RunConfig,
    pub curve: Curve,
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

type Outcome = Result<i32, CliError>;

/// Half-width of the lightlike-chart band, as a fraction of the domain width.
pub const HANDOVER_BAND: f64 = 0.1;

pub fn dispatch(ctx: &mut Ctx) -> Outcome {
    match ctx.cli.command {
        Command::Lightlike => lightlike(ctx),
        Command::Arcs => arcs(ctx),
        Command::Frame => frame(ctx),
        Command::Focal => focal(ctx, ChartKind::Frenet),
        Command::Bifurcation if ctx.cli.chart.is_none() => bifurcation(ctx),
        Command::Bifurcation => focal(ctx, ChartKind::Lightlike),
        Command::Cuspidal => cuspidal(ctx),
        Command::Classify => classify_cmd(ctx),
        Command::Ld => ld(ctx),
        Command::Verify => verify(ctx),
    }
}

fn coord_header(prefix: &str, dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("{prefix}x{i}")).collect()
}

fn coords(v: &MVector) -> Vec<String> {
    v.as_slice().iter().map(|&x| num(x)).collect()
}

fn t_grid(ctx: &Ctx) -> Vec<f64> {
    let (lo, hi) = ctx
        .cfg
        .s_range
        .unwrap_or((ctx.curve.domain.lo, ctx.curve.domain.hi));
    linspace(lo, hi, ctx.cfg.grid.0)
}

/// Write CSV rows to `--out` or standard output.
fn write_csv(ctx: &mut Ctx, header: Vec<String>, rows: Vec<Vec<String>>) -> io::Result<()> {
    emit(ctx.cfg.out.as_deref(), ctx.out, |w| {
        let mut csv = csv_writer(w);
        csv.write_record(&header)?;
        for r in &rows {
            csv.write_record(r)?;
        }
        csv.flush()
    })
}

fn skipped_note(ctx: &mut Ctx, skipped: usize, what: &str) -> io::Result<()> {
    if skipped > 0 {
        writeln!(ctx.err, "note: {skipped} {what} skipped (outside chart domain or too close to a lightlike point)")?;
    }
    Ok(())
}

fn soft(e: &FocalError) -> bool {
    matches!(
        e,
        FocalError::OutOfRange(_) | FocalError::Conditioning { .. } | FocalError::Degenerate { .. }
    )
}

fn lightlike(ctx: &mut Ctx) -> Outcome {
    let pts = find_lightlike_points(&ctx.curve, ctx.cfg.tolerances.zero)?;
    let arcs = split_arcs(&ctx.curve, &pts)?;
    let header = ["t_star", "omega_value", "certified", "arc_kind_left", "arc_kind_right"]
        .map(String::from)
        .to_vec();
    let rows = pts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            vec![
                num(p.t_star),
                num(p.omega_value),
                p.certified.to_string(),
                arcs[i].kind.to_string(),
                arcs[i + 1].kind.to_string(),
            ]
        })
        .collect();
    write_csv(ctx, header, rows)?;
    Ok(0)
}

fn arcs(ctx: &mut Ctx) -> Outcome {
    let pts = find_lightlike_points(&ctx.curve, ctx.cfg.tolerances.zero)?;
    let arcs = split_arcs(&ctx.curve, &pts)?;
    let rows = arcs
        .iter()
        .map(|a| vec![num(a.lo), num(a.hi), a.kind.to_string()])
        .collect();
    write_csv(ctx, ["lo", "hi", "kind"].map(String::from).to_vec(), rows)?;
    Ok(0)
}

fn frame(ctx: &mut Ctx) -> Outcome {
    let dim = ctx.curve.dim();
    let mut header = vec!["t".to_string()];
    let vecs: &[&str] = match ctx.curve.space {
        Space::R31 => &["t_", "n_", "b_"],
        Space::S21 => &["t_", "n_"],
        Space::S31 => &["t_", "n_", "e_"],
    };
    for p in vecs {
        header.extend(coord_header(p, dim));
    }
    let tail: &[&str] = match ctx.curve.space {
        Space::R31 => &["curvature", "torsion", "eps", "delta", "torsion_mismatch"],
        Space::S21 => &["kg", "eps", "delta"],
        Space::S31 => &["variant", "curvature", "torsion", "delta"],
    };
    header.extend(tail.iter().map(|s| s.to_string()));
    let (mut rows, mut skipped) = (Vec::new(), 0usize);
    for t in t_grid(ctx) {
        let row = match ctx.curve.space {
            Space::R31 => frame_r31(&ctx.curve, t).map(|f| {
                let mut r = vec![num(t)];
                for v in [f.t, f.n, f.b] {
                    r.extend(coords(&v));
                }
                r.extend([num(f.k), num(f.tau), num(f.eps), num(f.delta), f.tau_mismatch.to_string()]);
                r
            }),
            Space::S21 => frame_s21(&ctx.curve, t).map(|f| {
                let mut r = vec![num(t)];
                for v in [f.t, f.n] {
                    r.extend(coords(&v));
                }
                r.extend([num(f.kg), num(f.eps), num(f.delta)]);
                r
            }),
            Space::S31 => frame_s31(&ctx.curve, t).map(|f| {
                let mut r = vec![num(t)];
                for v in [f.t, f.n, f.e] {
                    r.extend(coords(&v));
                }
                match f.variant {
                    S31Variant::SpacelikeCurve { kg, taug, delta } => {
                        r.extend(["spacelike".into(), num(kg), num(taug), num(delta)])
                    }
                    S31Variant::TimelikeCurve { kh, tauh } => {
                        r.extend(["timelike".into(), num(kh), num(tauh), String::new()])
                    }
                }
                r
            }),
        };
        match row {
            Ok(r) => rows.push(r),
            Err(e) if soft(&e) => skipped += 1,
            Err(e) => return Err(e.into()),
        }
    }
    write_csv(ctx, header, rows)?;
    skipped_note(ctx, skipped, "samples")?;
    Ok(0)
}

fn mu_grid(ctx: &Ctx, chart: &dyn FocalChart) -> Vec<f64> {
    let (lo, hi) = ctx.cfg.mu_range.unwrap_or_else(|| chart.default_mu_range());
    linspace(lo, hi, ctx.cfg.grid.1)
}

fn focal(ctx: &mut Ctx, default: ChartKind) -> Outcome {
    let kind = ctx.cli.chart.unwrap_or(default);
    let chart = lookup_chart(ctx.curve.space, kind.as_str())?;
    let mesh = build_mesh(&ctx.curve, chart, &t_grid(ctx), &mu_grid(ctx, chart), ctx.cfg.projection)?;
    write_mesh(ctx, &chart.name(), mesh)
}

/// Frenet chart away from lightlike points, lightlike chart inside the
/// hand-over band around them.
fn bifurcation(ctx: &mut Ctx) -> Outcome {
    let space = ctx.curve.space;
    let frenet = lookup_chart(space, "frenet")?;
    let light = lookup_chart(space, "lightlike")?;
    let stars: Vec<f64> = find_lightlike_points(&ctx.curve, ctx.curve.tol().zero)?
        .iter()
        .map(|p| p.t_star)
        .collect();
    let band = HANDOVER_BAND * ctx.curve.domain.width();
    let (fm, lm) = (mu_grid(ctx, frenet), mu_grid(ctx, light));
    let mesh = build_stitched(
        &ctx.curve,
        (frenet, &fm),
        (light, &lm),
        &t_grid(ctx),
        &stars,
        band,
        ctx.cfg.projection,
    )?;
    write_mesh(ctx, &format!("{space}/stitched"), mesh)
}

fn write_mesh(ctx: &mut Ctx, name: &str, mesh: MeshBundle) -> Outcome {
    mesh.check().map_err(CliError::Internal)?;
    emit(ctx.cfg.out.as_deref(), ctx.out, |w| mesh.write_obj(w))?;
    let attrs: Option<PathBuf> = ctx
        .cfg
        .attrs
        .clone()
        .or_else(|| ctx.cfg.out.as_ref().map(|p| p.with_extension("csv")));
    if let Some(p) = attrs {
        emit(Some(&p), ctx.out, |w| mesh.write_attrs(w))?;
    }
    writeln!(
        ctx.err,
        "{name}: {} vertices, {} faces, {} segments, {} holes",
        mesh.vertices.len(),
        mesh.faces.len() + mesh.tris.len(),
        mesh.lines.len(),
        mesh.holes
    )?;
    Ok(0)
}

fn cuspidal(ctx: &mut Ctx) -> Outcome {
    let curve = &ctx.curve;
    let dim = curve.dim();
    let mut header = ["t", "branch", "mu"].map(String::from).to_vec();
    header.extend(coord_header("", dim));
    header.push("sing_class".into());
    let row = |t: f64, b: Branch, mu: Option<f64>, p: &MVector, sing: String| {
        let mut r = vec![num(t), b.as_str().to_string(), opt_num(mu)];
        r.extend(coords(p));
        r.push(sing);
        r
    };
    let (mut rows, mut skipped) = (Vec::new(), 0usize);
    match curve.space {
        Space::R31 => {
            for t in t_grid(ctx) {
                match cuspidal_curve(curve, t) {
                    Ok(c) => {
                        let s = classify(curve, t, &c.point, curve.tol().zero)?;
                        rows.push(row(t, Branch::Plus, Some(c.mu), &c.point, s.to_string()));
                    }
                    Err(e) if soft(&e) => skipped += 1,
                    Err(e) => return Err(e.into()),
                }
            }
        }
        Space::S31 => {
            for t in t_grid(ctx) {
                let spacelike = match frame_s31(curve, t) {
                    Ok(f) => f.is_spacelike(),
                    Err(e) if soft(&e) => {
                        skipped += 2;
                        continue;
                    }
                    Err(e) => return Err(e.into()),
                };
                for b in Branch::BOTH {
                    let c = if spacelike { g_cuspidal(curve, t, b) } else { h_cuspidal(curve, t, b) };
                    match c {
                        Ok(s) => rows.push(row(t, b, Some(s.chart.mu()), &s.point, s.sing.to_string())),
                        Err(e) if soft(&e) => skipped += 1,
                        Err(e) => return Err(e.into()),
                    }
                }
            }
        }
        Space::S21 => {
            let (lo, hi) = ctx.cfg.s_range.unwrap_or((curve.domain.lo, curve.domain.hi));
            match spherical_singular_points(curve, lo, hi)? {
                SphericalSingularities::ConstantCurvature { kg } => {
                    writeln!(
                        ctx.err,
                        "note: k_g is constant ({}) on [{lo}, {hi}]; every point of the focal curve is singular",
                        num(kg)
                    )?;
                }
                SphericalSingularities::Isolated(roots) => {
                    for t in roots {
                        for b in Branch::BOTH {
                            match spherical_focal_curve(curve, t, b) {
                                Ok(s) => rows.push(row(t, b, None, &s.point, s.sing.to_string())),
                                Err(e) if soft(&e) => skipped += 1,
                                Err(e) => return Err(e.into()),
                            }
                        }
                    }
                }
            }
        }
    }
    write_csv(ctx, header, rows)?;
    skipped_note(ctx, skipped, "parameters")?;
    Ok(0)
}

fn classify_cmd(ctx: &mut Ctx) -> Outcome {
    let t = ctx
        .cli
        .at
        .ok_or_else(|| CliError::Usage("classify needs --at t".into()))?;
    if ctx.cli.v.is_empty() {
        return Err(CliError::Usage("classify needs --v x1,x2,x3[,x4]".into()));
    }
    let v = MVector::from_slice(&ctx.cli.v)?;
    let curve = &ctx.curve;
    let class = classify(curve, t, &v, curve.tol().zero)?;
    let jet = dist_jet(curve, t, &v)?;
    let mut text = format!("class: {class}\n");
    match local_model(class) {
        Ok(m) => text.push_str(&format!("local_model: {}\n", m.label())),
        Err(_) => text.push_str("local_model: none\n"),
    }
    match contact_sphere_type(curve, t, &v, curve.tol().zero) {
        Ok(c) => text.push_str(&format!("contact_sphere: {c}\n")),
        Err(e) if soft(&e) => text.push_str("contact_sphere: undefined\n"),
        Err(e) => return Err(e.into()),
    }
    for (p, f) in jet.f.iter().enumerate() {
        text.push_str(&format!("f{p}: {}\n", num(*f)));
    }
    text.push_str(&format!("scale: {}\n", num(jet.scale)));
    emit(ctx.cfg.out.as_deref(), ctx.out, |w| w.write_all(text.as_bytes()))?;
    Ok(0)
}

fn ld(ctx: &mut Ctx) -> Outcome {
    let curve = &ctx.curve;
    if curve.space == Space::S21 {
        return Err(FocalError::NotApplicable("ld needs a curve in R31 or S31".into()).into());
    }
    let dim = curve.dim();
    let mut header = ["t0", "mu", "branch"].map(String::from).to_vec();
    header.extend(coord_header("", dim));
    header.extend(["metric_class", "det_gram"].map(String::from));
    let pts: Vec<f64> = find_lightlike_points(curve, curve.tol().zero)?
        .into_iter()
        .filter(|p| p.certified)
        .map(|p| p.t_star)
        .collect();
    let n = ctx.cfg.grid.0;
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    for t0 in pts {
        let samples: Vec<(f64, Branch, MVector, String, Option<f64>)> = match curve.space {
            Space::R31 => {
                let m0 = mu0(curve, t0)?;
                let range = ctx.cfg.mu_range.unwrap_or((-0.9 * m0.abs(), 0.9 * m0.abs()));
                let ex = ld_extract(curve, t0, range, n)?;
                notes.push(format!(
                    "t0 {}: mu0 {}, {} degenerate, {} rejected, line residual {}",
                    num(t0),
                    num(ex.mu0),
                    ex.samples.len(),
                    ex.rejected.len(),
                    num(ex.line_residual)
                ));
                ex.samples
                    .iter()
                    .map(|s| {
                        (s.chart.mu(), Branch::Plus, s.point, s.metric.class.to_string(), Some(s.metric.det))
                    })
                    .collect()
            }
            _ => s31_ld_extract(curve, t0, n)?
                .iter()
                .map(|s| {
                    let class = s.metric_class().map_or("none".into(), |c| c.to_string());
                    (s.chart.mu(), s.branch, s.point, class, s.metric.map(|m| m.det))
                })
                .collect(),
        };
        for (mu, b, p, class, det) in samples {
            let mut r = vec![num(t0), num(mu), b.as_str().to_string()];
            r.extend(coords(&p));
            r.extend([class, opt_num(det)]);
            rows.push(r);
        }
    }
    write_csv(ctx, header, rows)?;
    if notes.is_empty() {
        writeln!(ctx.err, "note: no certified lightlike points")?;
    }
    for n in notes {
        writeln!(ctx.err, "{n}")?;
    }
    Ok(0)
}

fn verify(ctx: &mut Ctx) -> Outcome {
    let label = ctx.cli.curve.display().to_string();
    let report = run_suite(&ctx.cli.suite, &ctx.curve, &label)?;
    crate::report::write_table(&report, ctx.out)?;
    if let Some(p) = ctx.cfg.out.as_deref() {
        let json = crate::report::to_json(&report);
        emit(Some(p), ctx.out, |w| w.write_all(json.as_bytes()))?;
    }
    match report.first_failure() {
        None => Ok(0),
        Some(a) => {
            writeln!(
                ctx.err,
                "verification failed: `{}` residual {} exceeds tol {}",
                a.name,
                num(a.residual),
                num(a.tol)
            )?;
            Ok(1)
        }
    }
}
