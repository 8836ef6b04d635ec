//! CSV and SVG emission for sweep results.

use std::fmt::Write as _;
use std::io::Write;

use infodyn_core::classical::SweepRow;
use infodyn_core::hilbert::LogBase;

/// Shortest decimal with at most `digits` significant digits, trailing zeros
/// trimmed; scientific notation outside `[1e-5, 1e9)`.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], base: LogBase, out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(["a", "D", "lyapunov", "label"])?;
    for r in rows {
        w.write_record([
            format_sig(r.a, 9),
            format_sig(base.from_nats(r.d), 9),
            format_sig(base.from_nats(r.lyapunov), 9),
            r.label.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;

/// Line plot of `D` and the Lyapunov exponent against the parameter.
/// Non-finite exponents break the line.
pub fn sweep_svg(rows: &[SweepRow], base: LogBase, map: &str) -> String {
    let d: Vec<f64> = rows.iter().map(|r| base.from_nats(r.d)).collect();
    let l: Vec<f64> = rows.iter().map(|r| base.from_nats(r.lyapunov)).collect();
    let xs: Vec<f64> = rows.iter().map(|r| r.a).collect();
    let finite = d.iter().chain(&l).copied().filter(|v| v.is_finite());
    let (mut ylo, mut yhi) = finite.fold((0.0f64, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if yhi - ylo < 1e-12 {
        ylo -= 1.0;
        yhi += 1.0;
    }
    let xlo = xs.first().copied().unwrap_or(0.0);
    let mut xhi = xs.last().copied().unwrap_or(1.0);
    if xhi - xlo < 1e-12 {
        xhi = xlo + 1.0;
    }
    let px = |x: f64| MARGIN + (x - xlo) / (xhi - xlo) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - ylo) / (yhi - ylo) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (x0, x1) = (MARGIN, WIDTH - MARGIN);
    let (y0, y1) = (HEIGHT - MARGIN, MARGIN);
    let _ = writeln!(
        s,
        r#"<polyline points="{x0},{y1} {x0},{y0} {x1},{y0}" fill="none" stroke="black"/>"#
    );
    if ylo < 0.0 && yhi > 0.0 {
        let z = py(0.0);
        let _ = writeln!(
            s,
            r##"<line x1="{x0}" y1="{z:.2}" x2="{x1}" y2="{z:.2}" stroke="#999" stroke-dasharray="4 4"/>"##
        );
    }
    for (series, color) in [(&d, "#1f77b4"), (&l, "#d62728")] {
        let mut segment: Vec<String> = Vec::new();
        let flush = |seg: &mut Vec<String>, s: &mut String| {
            if seg.len() > 1 {
                let _ = writeln!(
                    s,
                    r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                    seg.join(" ")
                );
            }
            seg.clear();
        };
        for (&x, &y) in xs.iter().zip(series.iter()) {
            if y.is_finite() {
                segment.push(format!("{:.2},{:.2}", px(x), py(y)));
            } else {
                flush(&mut segment, &mut s);
            }
        }
        flush(&mut segment, &mut s);
    }
    let label = |v: f64| format_sig(v, 4);
    let _ = writeln!(
        s,
        r#"<text x="{x0}" y="{}" font-size="12" font-family="sans-serif">{}</text>"#,
        y0 + 20.0,
        label(xlo)
    );
    let _ = writeln!(
        s,
        r#"<text x="{x1}" y="{}" font-size="12" font-family="sans-serif" text-anchor="end">{}</text>"#,
        y0 + 20.0,
        label(xhi)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{y0}" font-size="12" font-family="sans-serif" text-anchor="end">{}</text>"#,
        x0 - 6.0,
        label(ylo)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="12" font-family="sans-serif" text-anchor="end">{}</text>"#,
        x0 - 6.0,
        y1 + 4.0,
        label(yhi)
    );
    let _ = writeln!(
        s,
        r##"<text x="{}" y="30" font-size="14" font-family="sans-serif" text-anchor="middle">{map}: <tspan fill="#1f77b4">D</tspan> and <tspan fill="#d62728">Lyapunov exponent</tspan></text>"##,
        WIDTH / 2.0
    );
    s.push_str("</svg>\n");
    s
}
