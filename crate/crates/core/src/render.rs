//! CSV and SVG output for verification reports.

use std::fmt::Write as _;

use crate::envelope::{EnvelopeRecord, VerificationReport};
use crate::geometry::{quad_point, Point2};

pub const CSV_HEADER: &str =
    "r,s,a_rs,b_rs,a_sr,b_sr,t_contact,x1,y1,x2,y2,gap_alpha,gap_beta,deviation,bound_ok";

const SIGNIFICANT_DIGITS: usize = 12;

/// Formats `x` with 12 significant digits in the style of C's `%.12g`:
/// fixed notation for decimal exponents in `[-5, 12)`, scientific
/// otherwise, trailing zeros removed.
pub fn format_real(x: f64) -> String {
    format_significant(x, SIGNIFICANT_DIGITS)
}

fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    // Round once in scientific form, then pick the layout from the rounded
    // exponent.
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csv_row(out: &mut String, rec: &EnvelopeRecord) {
    let f = format_real;
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        rec.pair.r(),
        rec.pair.s(),
        rec.coeffs.a(),
        rec.coeffs.b(),
        rec.flipped.a(),
        rec.flipped.b(),
        f(rec.t_contact),
        f(rec.segment.start.x),
        f(rec.segment.start.y),
        f(rec.segment.end.x),
        f(rec.segment.end.y),
        f(rec.gap_alpha),
        f(rec.gap_beta),
        f(rec.deviation),
        rec.bound_ok,
    );
}

/// One header line plus one row per record, LF-terminated.
pub fn to_csv(report: &VerificationReport) -> String {
    let mut out = String::with_capacity(64 * (report.records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for rec in &report.records {
        csv_row(&mut out, rec);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    pub width_px: u32,
    /// Overlay the exact curve as a polyline.
    pub show_curve: bool,
    /// Mark the three control points.
    pub show_controls: bool,
    pub curve_samples: u32,
    /// Segment stroke width as a fraction of the bounding-box diagonal.
    pub stroke_width_fraction: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            width_px: 800,
            show_curve: false,
            show_controls: true,
            curve_samples: 256,
            stroke_width_fraction: 0.0008,
        }
    }
}

impl RenderOptions {
    pub fn validate(&self) -> Result<(), String> {
        if self.width_px < 16 {
            return Err(format!(
                "width must be at least 16 px, got {}",
                self.width_px
            ));
        }
        if self.curve_samples < 2 {
            return Err(format!(
                "curve samples must be at least 2, got {}",
                self.curve_samples
            ));
        }
        if !(self.stroke_width_fraction.is_finite() && self.stroke_width_fraction > 0.0) {
            return Err(format!(
                "stroke width fraction must be positive, got {}",
                self.stroke_width_fraction
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
struct Bounds {
    min: Point2,
    max: Point2,
}

impl Bounds {
    fn of(points: impl IntoIterator<Item = Point2>) -> Self {
        let mut min = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min = Point2::new(min.x.min(p.x), min.y.min(p.y));
            max = Point2::new(max.x.max(p.x), max.y.max(p.y));
        }
        Self { min, max }
    }

    fn padded(self, fraction: f64) -> Self {
        let w = (self.max.x - self.min.x).max(1.0);
        let h = (self.max.y - self.min.y).max(1.0);
        let pad = Point2::new(w * fraction, h * fraction);
        Self {
            min: self.min - pad,
            max: self.max + pad,
        }
    }

    fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    fn height(&self) -> f64 {
        self.max.y - self.min.y
    }
}

/// Standalone SVG 1.1 document: axes, optional control markers, one
/// `<line>` per record in record order, optional curve overlay last.
/// Coordinates are emitted with `y` negated so the plot reads upward.
pub fn to_svg(report: &VerificationReport, opts: &RenderOptions) -> String {
    let curve = report.params.curve();
    let controls = curve.control_points();
    let bounds = Bounds::of(
        report
            .records
            .iter()
            .flat_map(|r| [r.segment.start, r.segment.end])
            .chain(controls),
    )
    .padded(0.05);

    let f = format_real;
    let diag = bounds.width().hypot(bounds.height());
    let stroke = diag * opts.stroke_width_fraction;
    let width = opts.width_px as f64;
    let height = (width * bounds.height() / bounds.width()).round().max(1.0);
    // view box in screen coordinates (y down)
    let (vx, vy) = (bounds.min.x, -bounds.max.y);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        opts.width_px,
        height,
        f(vx),
        f(vy),
        f(bounds.width()),
        f(bounds.height()),
    );
    let c = report.params.center();
    let _ = writeln!(
        out,
        "<title>Bezier-Bezout envelope for (p,q)=({},{}), epsilon={}, {} segments</title>",
        c.p(),
        c.q(),
        f(report.params.epsilon()),
        report.records.len()
    );
    let _ = writeln!(
        out,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\"/>",
        f(vx),
        f(vy),
        f(bounds.width()),
        f(bounds.height())
    );

    let _ = writeln!(
        out,
        "<g id=\"axes\" stroke=\"#999999\" stroke-width=\"{}\">",
        f(stroke)
    );
    if bounds.min.y <= 0.0 && bounds.max.y >= 0.0 {
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"0\" x2=\"{}\" y2=\"0\"/>",
            f(bounds.min.x),
            f(bounds.max.x)
        );
    }
    if bounds.min.x <= 0.0 && bounds.max.x >= 0.0 {
        let _ = writeln!(
            out,
            "<line x1=\"0\" y1=\"{}\" x2=\"0\" y2=\"{}\"/>",
            f(-bounds.max.y),
            f(-bounds.min.y)
        );
    }
    out.push_str("</g>\n");

    if opts.show_controls {
        let _ = writeln!(out, "<g id=\"controls\" fill=\"#d62728\">");
        for p in controls {
            let _ = writeln!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                f(p.x),
                f(-p.y),
                f(stroke * 4.0)
            );
        }
        out.push_str("</g>\n");
    }

    // Round caps make zero-length segments visible as dots.
    let _ = writeln!(
        out,
        "<g id=\"segments\" stroke=\"#1f3b73\" stroke-width=\"{}\" stroke-linecap=\"round\">",
        f(stroke)
    );
    for rec in &report.records {
        let (a, b) = (rec.segment.start, rec.segment.end);
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            f(a.x),
            f(-a.y),
            f(b.x),
            f(-b.y)
        );
    }
    out.push_str("</g>\n");

    if opts.show_curve {
        let n = opts.curve_samples.max(2);
        let mut points = String::new();
        for i in 0..n {
            let t = i as f64 / (n - 1) as f64;
            let p = quad_point(&curve, t);
            if i > 0 {
                points.push(' ');
            }
            let _ = write!(points, "{},{}", f(p.x), f(-p.y));
        }
        let _ = writeln!(
            out,
            "<polyline id=\"curve\" fill=\"none\" stroke=\"#ff7f0e\" stroke-width=\"{}\" points=\"{}\"/>",
            f(stroke * 1.5),
            points
        );
    }

    out.push_str("</svg>\n");
    out
}
