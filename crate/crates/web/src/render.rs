//! SVG and HTML fragments for the demo page. Plain Rust, so it runs and
//! tests natively.

use std::fmt::Write;

use cobweb::hyperbox::{tile, TilingOutcome};
use cobweb::incidence::{coding_matrix, zeta_closure};
use cobweb::{FSequence, GradedPoset, GridVertex, HyperBox, Tiling};

pub const HASSE_VERTEX_LIMIT: usize = 300;
pub const TABLE_VERTEX_LIMIT: usize = 60;
const TILING_CELL_LIMIT: usize = 4_096;

#[derive(Debug, thiserror::Error)]
pub enum RenderError {
    #[error(transparent)]
    Core(#[from] cobweb::Error),
    #[error("{count} {what} is more than this page draws ({limit})")]
    TooLarge { what: &'static str, count: usize, limit: usize },
    #[error("no tiling exists (search exhausted after {0} nodes)")]
    NoTiling(u64),
}

pub type Result<T> = std::result::Result<T, RenderError>;

fn check_size(what: &'static str, count: usize, limit: usize) -> Result<()> {
    if count > limit {
        Err(RenderError::TooLarge { what, count, limit })
    } else {
        Ok(())
    }
}

pub fn sequence(name: &str) -> Result<FSequence> {
    Ok(FSequence::from_name(name, None)?)
}

/// Hasse diagram drawn bottom-up, one row per level.
pub fn hasse_svg(f: &FSequence, levels: usize) -> Result<String> {
    let p = GradedPoset::cobweb(f, levels)?;
    check_size("vertices", p.vertex_count(), HASSE_VERTEX_LIMIT)?;
    let widest = p.sizes().iter().copied().max().unwrap_or(1);
    let (dx, dy, pad) = (36.0, 64.0, 24.0);
    let width = pad * 2.0 + dx * (widest.max(2) - 1) as f64;
    let height = pad * 2.0 + dy * (p.num_levels() - 1) as f64;
    let position = |v: GridVertex| {
        let size = p.level_size(v.t).unwrap_or(1);
        let offset = (width - dx * (size - 1) as f64) / 2.0;
        let x = offset + dx * (v.s - 1) as f64;
        let y = height - pad - dy * (v.t - p.first_level()) as f64;
        (x, y)
    };
    let mut svg = format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width:.0} {height:.0}" class="hasse">"#
    );
    svg.push_str(r#"<g class="edges">"#);
    for t in p.first_level()..p.last_level() {
        for lower in p.level(t) {
            for upper in p.level(t + 1) {
                if p.covers(lower, upper) {
                    let ((x1, y1), (x2, y2)) = (position(lower), position(upper));
                    let _ = write!(svg, r#"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}"/>"#);
                }
            }
        }
    }
    svg.push_str(r#"</g><g class="vertices">"#);
    for v in p.vertices() {
        let (x, y) = position(v);
        let _ = write!(svg, r#"<circle cx="{x:.1}" cy="{y:.1}" r="6"><title>{}</title></circle>"#, escape(&v.to_string()));
    }
    svg.push_str("</g></svg>");
    Ok(svg)
}

/// Mobius matrix as an HTML table, shaded by the zeta function.
pub fn mobius_table(f: &FSequence, levels: usize) -> Result<String> {
    let p = GradedPoset::cobweb(f, levels)?;
    check_size("vertices", p.vertex_count(), TABLE_VERTEX_LIMIT)?;
    let zeta = zeta_closure(&p);
    let mu = coding_matrix(f, levels)?.expand(f)?;
    let names: Vec<String> = p.vertices().map(|v| v.to_string()).collect();
    let mut html = String::from(r#"<table class="mobius"><thead><tr><th></th>"#);
    for name in &names {
        let _ = write!(html, "<th>{}</th>", escape(name));
    }
    html.push_str("</tr></thead><tbody>");
    for (i, name) in names.iter().enumerate() {
        let _ = write!(html, "<tr><th>{}</th>", escape(name));
        for j in 0..names.len() {
            let class = if i == j {
                "diagonal"
            } else if zeta.get(i, j) == &1.into() {
                "above"
            } else {
                "unrelated"
            };
            let value = mu.get(i, j);
            let shown = if class == "unrelated" { String::new() } else { value.to_string() };
            let _ = write!(html, r#"<td class="{class}">{shown}</td>"#);
        }
        html.push_str("</tr>");
    }
    html.push_str("</tbody></table>");
    Ok(html)
}

/// A tiling of the box of levels `n−m+1..n`: one grid per setting of the
/// leading coordinates, the last two axes spanning each grid.
pub fn tiling_svg(f: &FSequence, m: usize, n: usize) -> Result<String> {
    if (1..=n).contains(&m) {
        let volume = HyperBox::new(f, n + 1 - m, n)?.volume();
        check_size("box cells", usize::try_from(&volume).unwrap_or(usize::MAX), TILING_CELL_LIMIT)?;
    }
    match tile(f, m, n)? {
        TilingOutcome::Found(t) => Ok(draw_tiling(&t)),
        TilingOutcome::Exhausted { nodes } | TilingOutcome::LimitReached { nodes } => Err(RenderError::NoTiling(nodes)),
    }
}

fn draw_tiling(t: &Tiling) -> String {
    let extents = t.target.extents();
    let (lead, grid) = extents.split_at(extents.len().saturating_sub(2));
    let (rows, cols) = match grid {
        [r, c] => (*r, *c),
        [c] => (1, *c),
        _ => (1, 1),
    };
    let panels: Vec<Vec<usize>> = lead.iter().fold(vec![vec![]], |acc, &e| {
        acc.into_iter().flat_map(|p| (1..=e).map(move |x| [p.clone(), vec![x]].concat())).collect()
    });
    let cell = 22.0;
    let gap = cell;
    let panel_width = cols as f64 * cell;
    let width = panels.len() as f64 * (panel_width + gap) - gap + 2.0;
    let height = rows as f64 * cell + 2.0 + if lead.is_empty() { 0.0 } else { 18.0 };
    let top = if lead.is_empty() { 1.0 } else { 19.0 };
    let mut svg = format!(r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width:.0} {height:.0}" class="tiling">"#);
    for (k, panel) in panels.iter().enumerate() {
        let left = 1.0 + k as f64 * (panel_width + gap);
        if !panel.is_empty() {
            let coords: Vec<String> = panel.iter().map(ToString::to_string).collect();
            let _ = write!(svg, r#"<text x="{left:.0}" y="13">({}, ..)</text>"#, coords.join(", "));
        }
        for (index, tile) in t.tiles.iter().enumerate() {
            let (fixed, span) = tile.intervals.split_at(lead.len());
            if !fixed.iter().zip(panel).all(|(&(a, b), &x)| a <= x && x <= b) {
                continue;
            }
            let ((r0, r1), (c0, c1)) = match span {
                [r, c] => (*r, *c),
                [c] => ((1, 1), *c),
                _ => ((1, 1), (1, 1)),
            };
            let hue = (index * 137) % 360;
            let _ = write!(
                svg,
                r#"<rect x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="hsl({hue},60%,70%)"><title>tile {}</title></rect>"#,
                left + (c0 - 1) as f64 * cell,
                top + (r0 - 1) as f64 * cell,
                (c1 - c0 + 1) as f64 * cell,
                (r1 - r0 + 1) as f64 * cell,
                index + 1
            );
        }
    }
    svg.push_str("</svg>");
    svg
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
