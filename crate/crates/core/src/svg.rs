//! Deterministic SVG pictures of monomial staircases.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::Result;
use crate::jones::JonesInstance;
use crate::monomial_ideal::MonomialIdeal;

/// Staircase of `a` with its generators and Newton polygon. With an
/// instance, also the points `T, B, P, Q, A` and the triangles `TBQ`, `PBQ`.
pub fn staircase_svg(a: &MonomialIdeal, annotations: Option<&JonesInstance>) -> Result<String> {
    let hull = a.newton_polygon()?;
    let gens = a.gens();
    let mut points: Vec<(&str, f64, f64)> = Vec::new();
    if let Some(inst) = annotations {
        let f = |(x, y): (u32, u32)| (x as f64, y as f64);
        let (an, ad) = inst.a_point();
        for (name, (x, y)) in [
            ("T", f(inst.t_point())),
            ("B", f(inst.b_point())),
            ("P", f(inst.p_point())),
            ("Q", f(inst.q_point())),
            ("A", (an as f64 / ad as f64, 0.0)),
        ] {
            points.push((name, x, y));
        }
    }
    let w = gens.iter().map(|g| g.0 as f64).chain(points.iter().map(|p| p.1)).fold(1.0, f64::max);
    let h = gens.iter().map(|g| g.1 as f64).chain(points.iter().map(|p| p.2)).fold(1.0, f64::max);
    // flip so that the y exponent grows upwards
    let px = |x: f64, y: f64| format!("{},{}", num(x), num(h - y));

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="-1 -1 {} {}">"#,
        num(w + 2.0),
        num(h + 2.0)
    );
    let _ = writeln!(
        out,
        r#"<path d="M{} H{} M{} V{}" stroke="gray" stroke-width="0.05" fill="none"/>"#,
        px(0.0, 0.0),
        num(w),
        px(0.0, 0.0),
        num(0.0)
    );
    if let Some(inst) = annotations {
        let f = |(x, y): (u32, u32)| px(x as f64, y as f64);
        let (t, b, p, q) = (f(inst.t_point()), f(inst.b_point()), f(inst.p_point()), f(inst.q_point()));
        let _ = writeln!(out, r##"<polygon class="dark" points="{t} {b} {q}" fill="#555" fill-opacity="0.5"/>"##);
        let _ = writeln!(out, r##"<polygon class="light" points="{p} {b} {q}" fill="#bbb" fill-opacity="0.5"/>"##);
    }
    let mut stair = Vec::new();
    for (k, &(x, y)) in gens.iter().enumerate() {
        if k > 0 {
            stair.push(px(x as f64, gens[k - 1].1 as f64));
        }
        stair.push(px(x as f64, y as f64));
    }
    let _ = writeln!(
        out,
        r#"<polyline class="staircase" points="{}" stroke="black" stroke-width="0.08" fill="none"/>"#,
        stair.join(" ")
    );
    let verts: Vec<String> = hull.vertices.iter().map(|&(x, y)| px(x as f64, y as f64)).collect();
    let _ = writeln!(
        out,
        r#"<polyline class="newton" points="{}" stroke="blue" stroke-width="0.05" stroke-dasharray="0.2,0.1" fill="none"/>"#,
        verts.join(" ")
    );
    for &(x, y) in gens {
        let _ = writeln!(
            out,
            r#"<circle class="generator" cx="{}" cy="{}" r="0.15" fill="black"/>"#,
            num(x as f64),
            num(h - y as f64)
        );
    }
    for (name, x, y) in points {
        let _ = writeln!(out, r#"<circle class="anchor" cx="{}" cy="{}" r="0.12" fill="red"/>"#, num(x), num(h - y));
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="0.5" fill="red">{name}</text>"#,
            num(x + 0.15),
            num(h - y - 0.15)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Up to three decimals, trailing zeros dropped.
fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(s: &str, pat: &str) -> usize {
        s.matches(pat).count()
    }

    #[test]
    fn maximal_ideal_has_one_step() {
        let s = staircase_svg(&MonomialIdeal::maximal_power(1), None).unwrap();
        assert_eq!(count(&s, "class=\"generator\""), 2);
        assert!(s.contains(r#"class="staircase" points="0,0 1,0 1,1""#));
    }

    #[test]
    fn m_squared_hull() {
        let s = staircase_svg(&MonomialIdeal::maximal_power(2), None).unwrap();
        assert_eq!(count(&s, "class=\"generator\""), 3);
        assert!(s.contains(r#"class="newton" points="0,0 2,2""#));
        assert!(s.contains(r#"viewBox="-1 -1 4 4""#));
    }

    #[test]
    fn counterexample_j_and_annotations() {
        let j = MonomialIdeal::new(&[(36, 0), (25, 4), (8, 18), (0, 24)]).unwrap();
        let s = staircase_svg(&j, None).unwrap();
        assert_eq!(count(&s, "class=\"generator\""), 4);
        let inst = JonesInstance::new(2, 3, 1, 2, 1, 0).unwrap();
        let a = staircase_svg(&inst.ideal_j(), Some(&inst)).unwrap();
        assert_eq!(count(&a, "class=\"anchor\""), 5);
        assert_eq!(a, staircase_svg(&inst.ideal_j(), Some(&inst)).unwrap());
    }
}
