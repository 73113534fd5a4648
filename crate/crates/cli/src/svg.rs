//! Self-contained SVG rendering of snail cross-sections.
//!
//! Fixed 600×600 viewport; the drawn geometry is scaled to fit with a 5%
//! margin. The section region is filled gray, the cross-section of the
//! circular root hull is the dashed circle, and critical-point traces in the
//! section plane are drawn on top.

const VIEW: f64 = 600.0;
const MARGIN: f64 = 0.05;

pub struct SectionPlot {
    /// Boundary radii over the upper half (`theta` in `[0, π]`, positive J).
    pub upper: Vec<(f64, f64)>,
    /// Boundary radii over the mirrored half (positive angles toward −J).
    pub lower: Vec<(f64, f64)>,
    /// Radius of the circular-hull cross-section, when it meets the plane.
    pub hull_radius: Option<f64>,
    /// Radii of critical spheres cutting the section plane.
    pub critical_circles: Vec<f64>,
    /// In-plane coordinates of isolated critical points lying on the plane.
    pub critical_points: Vec<(f64, f64)>,
}

fn polar(rho: f64, theta: f64) -> (f64, f64) {
    (rho * theta.cos(), rho * theta.sin())
}

pub fn render(plot: &SectionPlot) -> String {
    let mut outline: Vec<(f64, f64)> = Vec::new();
    for &(theta, rho) in &plot.upper {
        outline.push(polar(rho, theta));
    }
    for &(theta, rho) in plot.lower.iter().rev() {
        let (x, y) = polar(rho, theta);
        outline.push((x, -y));
    }

    let mut extent = 1e-6f64;
    for &(x, y) in &outline {
        extent = extent.max(x.abs()).max(y.abs());
    }
    if let Some(r) = plot.hull_radius {
        extent = extent.max(r);
    }
    for &r in &plot.critical_circles {
        extent = extent.max(r);
    }
    for &(x, y) in &plot.critical_points {
        extent = extent.max(x.abs()).max(y.abs());
    }

    let scale = VIEW * (0.5 - MARGIN) / extent;
    let map = |x: f64, y: f64| (VIEW / 2.0 + x * scale, VIEW / 2.0 - y * scale);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{VIEW}\" height=\"{VIEW}\" viewBox=\"0 0 {VIEW} {VIEW}\">\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{VIEW}\" height=\"{VIEW}\" fill=\"white\"/>\n"
    ));

    if outline.len() >= 3 {
        let mut path = String::from("M");
        for (i, &(x, y)) in outline.iter().enumerate() {
            let (px, py) = map(x, y);
            if i > 0 {
                path.push_str(" L");
            }
            path.push_str(&format!(" {px:.6} {py:.6}"));
        }
        path.push_str(" Z");
        svg.push_str(&format!(
            "  <path d=\"{path}\" fill=\"#cccccc\" stroke=\"#888888\" stroke-width=\"1\"/>\n"
        ));
    }

    if let Some(r) = plot.hull_radius {
        let (cx, cy) = map(0.0, 0.0);
        svg.push_str(&format!(
            "  <circle cx=\"{cx:.6}\" cy=\"{cy:.6}\" r=\"{:.6}\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1.5\" stroke-dasharray=\"8 5\"/>\n",
            r * scale
        ));
    }

    for &r in &plot.critical_circles {
        let (cx, cy) = map(0.0, 0.0);
        svg.push_str(&format!(
            "  <circle cx=\"{cx:.6}\" cy=\"{cy:.6}\" r=\"{:.6}\" fill=\"none\" stroke=\"#aa2222\" stroke-width=\"1.5\" stroke-dasharray=\"2 3\"/>\n",
            r * scale
        ));
    }

    for &(x, y) in &plot.critical_points {
        let (px, py) = map(x, y);
        svg.push_str(&format!(
            "  <circle cx=\"{px:.6}\" cy=\"{py:.6}\" r=\"3\" fill=\"#aa2222\"/>\n"
        ));
    }

    svg.push_str("</svg>\n");
    svg
}
