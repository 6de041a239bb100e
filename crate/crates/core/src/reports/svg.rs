use std::fmt::Write;

const PALETTE: [&str; 6] = ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgStyle {
    pub width: f64,
    pub height: f64,
    /// Space reserved on every side for labels and the legend.
    pub margin: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle { width: 800.0, height: 480.0, margin: 60.0 }
    }
}

impl SvgStyle {
    pub fn plot_height(&self) -> f64 {
        self.height - 2.0 * self.margin
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn first_seen<'a>(items: impl Iterator<Item = &'a str>) -> Vec<&'a str> {
    let mut out: Vec<&str> = Vec::new();
    for s in items {
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// Grouped bar chart of (category, series, value) triples. Categories and
/// series keep their first-seen order; bars grow from a zero line, so
/// negative values hang below it. Only bars are drawn as `rect`.
pub fn emit_svg_bars(dataset: &[(String, String, f64)], style: &SvgStyle) -> String {
    let categories = first_seen(dataset.iter().map(|d| d.0.as_str()));
    let series = first_seen(dataset.iter().map(|d| d.1.as_str()));
    let hi = dataset.iter().map(|d| d.2).fold(0.0, f64::max);
    let lo = dataset.iter().map(|d| d.2).fold(0.0, f64::min);
    let span = if hi > lo { hi - lo } else { 1.0 };

    let plot_w = style.width - 2.0 * style.margin;
    let plot_h = style.plot_height();
    let y_of = |v: f64| style.margin + (hi - v) / span * plot_h;
    let zero = y_of(0.0);
    let group_w = plot_w / categories.len().max(1) as f64;
    let bar_w = group_w * 0.8 / series.len().max(1) as f64;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}" font-family="sans-serif" font-size="12">"#,
        w = style.width,
        h = style.height
    );
    for (category, name, value) in dataset {
        let ci = categories.iter().position(|c| c == category).unwrap_or(0);
        let si = series.iter().position(|s| s == name).unwrap_or(0);
        let x = style.margin + ci as f64 * group_w + group_w * 0.1 + si as f64 * bar_w;
        let y = y_of(*value);
        let _ = writeln!(
            svg,
            r#"<rect x="{x:.2}" y="{top:.2}" width="{bar_w:.2}" height="{height:.2}" fill="{fill}"><title>{label}: {value}</title></rect>"#,
            top = y.min(zero),
            height = (y - zero).abs(),
            fill = PALETTE[si % PALETTE.len()],
            label = escape(&format!("{category} / {name}")),
        );
    }
    let _ = writeln!(
        svg,
        r##"<line x1="{x1:.2}" y1="{zero:.2}" x2="{x2:.2}" y2="{zero:.2}" stroke="#333"/>"##,
        x1 = style.margin,
        x2 = style.margin + plot_w,
    );
    for (ci, category) in categories.iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"<text x="{x:.2}" y="{y:.2}" text-anchor="middle">{label}</text>"#,
            x = style.margin + (ci as f64 + 0.5) * group_w,
            y = style.height - style.margin / 2.0,
            label = escape(category),
        );
    }
    for (si, name) in series.iter().enumerate() {
        let x = style.margin + si as f64 * 140.0;
        let y = style.margin / 2.0;
        let _ = writeln!(
            svg,
            r#"<circle cx="{x:.2}" cy="{cy:.2}" r="5" fill="{fill}"/><text x="{tx:.2}" y="{y:.2}">{label}</text>"#,
            cy = y - 4.0,
            tx = x + 10.0,
            fill = PALETTE[si % PALETTE.len()],
            label = escape(name),
        );
    }
    svg.push_str("</svg>\n");
    svg
}
