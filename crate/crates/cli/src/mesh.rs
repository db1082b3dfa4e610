//! Focal-set meshes: OBJ geometry plus a per-vertex attribute CSV.

use std::io::{self, Write};

use focal_core::chart::{ChartSample, FocalChart};
use focal_core::error::FocalError;
use focal_core::focal_desitter::Branch;
use focal_core::{Curve, Result};
use rayon::prelude::*;

use crate::args::Projection;
use crate::output::{csv_writer, num, opt_num};

#[derive(Debug, Clone, PartialEq)]
pub struct VertexAttr {
    pub s_or_t: f64,
    pub mu: f64,
    pub branch: Branch,
    pub metric_class: String,
    pub sing_class: String,
    pub det_gram: Option<f64>,
    pub on_sphere_residual: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MeshBundle {
    pub vertices: Vec<[f64; 3]>,
    /// Quads, as vertex indices.
    pub faces: Vec<[usize; 4]>,
    /// Seam triangles between charts.
    pub tris: Vec<[usize; 3]>,
    /// Polyline segments, for focal curves.
    pub lines: Vec<[usize; 2]>,
    pub attributes: Vec<VertexAttr>,
    /// Grid cells with no sample (chart domain violations).
    pub holes: usize,
}

pub const ATTR_HEADER: [&str; 8] = [
    "index",
    "s_or_t",
    "mu",
    "branch",
    "metric_class",
    "sing_class",
    "det_gram",
    "on_sphere_residual",
];

impl MeshBundle {
    /// Face indices in range and one attribute row per vertex.
    pub fn check(&self) -> std::result::Result<(), String> {
        let n = self.vertices.len();
        if self.attributes.len() != n {
            return Err(format!("{} attribute rows for {n} vertices", self.attributes.len()));
        }
        let bad = self
            .faces
            .iter()
            .flatten()
            .chain(self.tris.iter().flatten())
            .chain(self.lines.iter().flatten())
            .find(|&&i| i >= n);
        match bad {
            Some(i) => Err(format!("index {i} out of range for {n} vertices")),
            None => Ok(()),
        }
    }

    pub fn write_obj(&self, w: &mut dyn Write) -> io::Result<()> {
        for v in &self.vertices {
            writeln!(w, "v {} {} {}", num(v[0]), num(v[1]), num(v[2]))?;
        }
        for f in &self.faces {
            writeln!(w, "f {} {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1, f[3] + 1)?;
        }
        for t in &self.tris {
            writeln!(w, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
        }
        for l in &self.lines {
            writeln!(w, "l {} {}", l[0] + 1, l[1] + 1)?;
        }
        Ok(())
    }

    pub fn write_attrs(&self, w: &mut dyn Write) -> io::Result<()> {
        let mut csv = csv_writer(w);
        csv.write_record(ATTR_HEADER)?;
        for (i, a) in self.attributes.iter().enumerate() {
            csv.write_record([
                i.to_string(),
                num(a.s_or_t),
                num(a.mu),
                a.branch.as_str().to_string(),
                a.metric_class.clone(),
                a.sing_class.clone(),
                opt_num(a.det_gram),
                opt_num(a.on_sphere_residual),
            ])?;
        }
        csv.flush()
    }
}

/// Inclusive grid of `n` points (midpoint when `n == 1`).
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![0.5 * (lo + hi)],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

fn hole(e: &FocalError) -> bool {
    matches!(
        e,
        FocalError::OutOfRange(_)
            | FocalError::Conditioning { .. }
            | FocalError::Degenerate { .. }
            | FocalError::Domain { .. }
    )
}

/// Vertex indices of a grid mesh: `[branch][t index][μ index]`.
type GridIndex = Vec<Vec<Vec<Option<usize>>>>;

/// Sample `chart` on `ts × mus` for each branch and assemble a mesh.
///
/// Cells are computed in parallel and merged in grid order, so the output is
/// independent of scheduling.
pub fn build_mesh(
    curve: &Curve,
    chart: &dyn FocalChart,
    ts: &[f64],
    mus: &[f64],
    projection: Projection,
) -> Result<MeshBundle> {
    build_grid(curve, chart, ts, mus, projection).map(|(m, _)| m)
}

fn build_grid(
    curve: &Curve,
    chart: &dyn FocalChart,
    ts: &[f64],
    mus: &[f64],
    projection: Projection,
) -> Result<(MeshBundle, GridIndex)> {
    let surface = chart.dimension() == 2;
    let mus: Vec<f64> = if surface { mus.to_vec() } else { vec![0.0] };
    let (n, m) = (ts.len(), mus.len());
    let cells: Vec<(Branch, usize, usize)> = chart
        .branches()
        .iter()
        .flat_map(|&b| (0..n).flat_map(move |i| (0..m).map(move |j| (b, i, j))))
        .collect();
    let samples: Vec<Option<ChartSample>> = cells
        .par_iter()
        .map(|&(b, i, j)| match chart.sample(curve, ts[i], mus[j], b) {
            Ok(s) => Ok(Some(s)),
            Err(e) if hole(&e) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;

    let mut mesh = MeshBundle::default();
    let mut index = vec![None; cells.len()];
    for (k, s) in samples.iter().enumerate() {
        let Some(s) = s else {
            mesh.holes += 1;
            continue;
        };
        let Some(v) = projection.apply(s.point.as_slice()) else {
            mesh.holes += 1;
            continue;
        };
        index[k] = Some(mesh.vertices.len());
        mesh.vertices.push(v);
        mesh.attributes.push(VertexAttr {
            s_or_t: s.params.t(),
            mu: s.params.mu(),
            branch: s.branch,
            metric_class: s.metric_class().map_or("none".into(), |c| c.as_str().into()),
            sing_class: s.sing.to_string(),
            det_gram: s.det_gram(),
            on_sphere_residual: s.sphere_residual,
        });
    }
    let grid: GridIndex = index
        .chunks(n * m)
        .map(|b| b.chunks(m).map(<[_]>::to_vec).collect())
        .collect();
    for g in &grid {
        for i in 0..n.saturating_sub(1) {
            if surface {
                for j in 0..m - 1 {
                    if let (Some(a), Some(c), Some(d), Some(e)) =
                        (g[i][j], g[i + 1][j], g[i + 1][j + 1], g[i][j + 1])
                    {
                        mesh.faces.push([a, c, d, e]);
                    }
                }
            } else if let (Some(a), Some(c)) = (g[i][0], g[i + 1][0]) {
                mesh.lines.push([a, c]);
            }
        }
    }
    Ok((mesh, grid))
}

/// Maximal runs of `ts` inside (`true`) or outside the hand-over band
/// `|t - t*| <= band` around the lightlike parameters.
pub fn split_by_band(ts: &[f64], lightlike: &[f64], band: f64) -> Vec<(bool, Vec<f64>)> {
    let mut runs: Vec<(bool, Vec<f64>)> = Vec::new();
    for &t in ts {
        let near = lightlike.iter().any(|&s| (t - s).abs() <= band);
        match runs.last_mut() {
            Some((k, v)) if *k == near => v.push(t),
            _ => runs.push((near, vec![t])),
        }
    }
    runs
}

fn dist2(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    (0..3).map(|i| (a[i] - b[i]).powi(2)).sum()
}

fn nearest(vertices: &[[f64; 3]], from: usize, among: &[usize]) -> Option<usize> {
    among
        .iter()
        .copied()
        .min_by(|&x, &y| {
            dist2(&vertices[from], &vertices[x]).total_cmp(&dist2(&vertices[from], &vertices[y]))
        })
}

/// Join column `a` to column `b` by nearest-neighbor matching.
fn zip_seam(mesh: &mut MeshBundle, a: &[usize], b: &[usize]) {
    if a.is_empty() || b.is_empty() {
        return;
    }
    let matched: Vec<usize> = a
        .iter()
        .map(|&v| nearest(&mesh.vertices, v, b).expect("non-empty column"))
        .collect();
    if a.len() == 1 {
        mesh.lines.push([a[0], matched[0]]);
        return;
    }
    for k in 0..a.len() - 1 {
        let (p, q) = (a[k], a[k + 1]);
        let (mp, mq) = (matched[k], matched[k + 1]);
        mesh.tris.push([p, q, mp]);
        if mp != mq {
            mesh.tris.push([q, mq, mp]);
        }
    }
}

/// One chart per run of `ts`: `lightlike` inside the hand-over band, `frenet`
/// outside, with nearest-neighbor seams between consecutive runs.
#[allow(clippy::too_many_arguments)]
pub fn build_stitched(
    curve: &Curve,
    frenet: (&dyn FocalChart, &[f64]),
    lightlike: (&dyn FocalChart, &[f64]),
    ts: &[f64],
    lightlike_ts: &[f64],
    band: f64,
    projection: Projection,
) -> Result<MeshBundle> {
    let mut mesh = MeshBundle::default();
    let mut last_cols: Vec<(Branch, Vec<usize>)> = Vec::new();
    for (near, run) in split_by_band(ts, lightlike_ts, band) {
        let (chart, mus) = if near { lightlike } else { frenet };
        let (part, grid) = build_grid(curve, chart, &run, mus, projection)?;
        let off = mesh.vertices.len();
        let shift = |v: &Option<usize>| v.map(|i| i + off);
        let column = |g: &Vec<Vec<Option<usize>>>, i: usize| -> Vec<usize> {
            g[i].iter().filter_map(shift).collect()
        };
        let branches = chart.branches();
        let firsts: Vec<(Branch, Vec<usize>)> =
            branches.iter().zip(&grid).map(|(&b, g)| (b, column(g, 0))).collect();
        let lasts: Vec<(Branch, Vec<usize>)> = branches
            .iter()
            .zip(&grid)
            .map(|(&b, g)| (b, column(g, g.len() - 1)))
            .collect();
        mesh.vertices.extend(part.vertices);
        mesh.attributes.extend(part.attributes);
        mesh.faces.extend(part.faces.iter().map(|f| f.map(|i| i + off)));
        mesh.lines.extend(part.lines.iter().map(|l| l.map(|i| i + off)));
        mesh.holes += part.holes;
        for (b, a) in &last_cols {
            if let Some((_, f)) = firsts.iter().find(|(fb, _)| fb == b) {
                zip_seam(&mut mesh, a, f);
            }
        }
        last_cols = lasts;
    }
    Ok(mesh)
}
