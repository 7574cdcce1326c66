//! CSV and SVG emission for witness series.

use std::fmt::Write as _;

use crate::witnesses::WitnessSeries;

pub const CSV_HEADER: &str = "tau,hss,chi,negativity,mid";

/// Plain decimal notation rounded to 12 significant digits.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    // value = 0.d1d2... × 10^(exp+1)
    let point = exp + 1;
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if point <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-point) as usize));
        out.push_str(&digits);
    } else if point as usize >= digits.len() {
        out.push_str(&digits);
        out.extend(std::iter::repeat_n('0', point as usize - digits.len()));
    } else {
        out.push_str(&digits[..point as usize]);
        out.push('.');
        out.push_str(&digits[point as usize..]);
    }
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}

pub fn series_csv(series: &WitnessSeries) -> String {
    let mut out = String::with_capacity(series.tau_grid.len() * 80);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for i in 0..series.tau_grid.len() {
        let row = [
            series.tau_grid[i],
            series.hss[i],
            series.chi[i],
            series.negativity[i],
            series.mid[i],
        ];
        let cells: Vec<String> = row.iter().map(|&v| format_sig12(v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const MARGIN: f64 = 56.0;
const COLORS: [&str; 3] = ["#1f77b4", "#d62728", "#2ca02c"];

/// Static SVG 1.1 line plot of HSS, negativity and MID against τ.
pub fn series_svg(series: &WitnessSeries, title: &str) -> String {
    let lines: [(&str, &[f64]); 3] = [
        ("HSS", &series.hss),
        ("negativity", &series.negativity),
        ("MID", &series.mid),
    ];
    let tau = &series.tau_grid;
    let (t0, t1) = (tau[0], tau[tau.len() - 1]);
    let (mut lo, mut hi) = lines
        .iter()
        .flat_map(|(_, v)| v.iter().copied())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !(hi - lo > 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    let pad = 0.05 * (hi - lo);
    let (lo, hi) = (lo - pad, hi + pad);
    let x = |t: f64| MARGIN + (t - t0) / (t1 - t0) * (WIDTH - 2.0 * MARGIN);
    let y = |v: f64| HEIGHT - MARGIN - (v - lo) / (hi - lo) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    // axes
    let _ = writeln!(
        svg,
        r#"<path d="M{m} {top} V{b} H{r}" stroke="black" fill="none"/>"#,
        m = MARGIN,
        top = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    );
    for k in 0..=4 {
        let f = f64::from(k) / 4.0;
        let (tv, vv) = (t0 + f * (t1 - t0), lo + f * (hi - lo));
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
            x(tv),
            HEIGHT - MARGIN + 16.0,
            trim_tick(tv)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
            MARGIN - 6.0,
            y(vv) + 4.0,
            trim_tick(vv)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="13" text-anchor="middle">τ</text>"#,
        WIDTH / 2.0,
        HEIGHT - 14.0
    );
    for (k, (name, values)) in lines.iter().enumerate() {
        let points: Vec<String> = tau
            .iter()
            .zip(values.iter())
            .map(|(&t, &v)| format!("{:.2},{:.2}", x(t), y(v)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#,
            COLORS[k],
            points.join(" ")
        );
        let ly = MARGIN + 8.0 + 18.0 * k as f64;
        let lx = WIDTH - MARGIN - 120.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{}" stroke-width="2"/>"#,
            lx + 24.0,
            COLORS[k]
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{name}</text>"#,
            lx + 30.0,
            ly + 4.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn trim_tick(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
