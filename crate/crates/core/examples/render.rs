//! Escape-time picture of `e^z - 1`. Pass a path to keep the PPM file.

use cantor_bouquet::plane::{render_escape, ComplexPoint, Viewport, ESCAPE_RE};

fn main() {
    let out = std::env::args().nth(1);
    let vp = Viewport {
        re_min: -2.0,
        re_max: 4.0,
        im_min: -std::f64::consts::PI,
        im_max: std::f64::consts::PI,
        width_px: 160,
        height_px: 160,
    };
    let summary = render_escape(ComplexPoint::real(-1.0), &vp, 80, ESCAPE_RE, out.as_deref().map(std::path::Path::new))
        .expect("render");
    println!("{}", serde_json::to_string_pretty(&summary).unwrap());
}
