//! Browser bindings for the static demo page in `www/`.
//!
//! Each exported function returns a JSON string; errors become thrown
//! strings on the JavaScript side.

use serde_json::json;
use wasm_bindgen::prelude::*;

use rtfactor::clifford::partition_function_identity;
use rtfactor::confint::{framed_self_linking, gauss_linking, ParamCurve};
use rtfactor::diagram::{catalog_link, parse_braid, LinkSpec};
use rtfactor::kauffman::{jones_polynomial, kauffman_bracket};
use rtfactor::lie::builtin;
use rtfactor::quantum_group::sln_fundamental_ribbon;
use rtfactor::ring::parse_rational;
use rtfactor::rt::{hbar_expand_invariant, oriented_invariant};

const MAX_BROWSER_CROSSINGS: usize = 16;
const MAX_SAMPLES: usize = 2048;

fn link_from(text: &str, kinks: i32) -> Result<LinkSpec, String> {
    let text = text.trim();
    let base = catalog_link(text)
        .or_else(|_| parse_braid(text).map(|b| LinkSpec::new(b, 0)))
        .map_err(|e| e.to_string())?;
    Ok(LinkSpec::new(base.braid, base.framing_kinks + kinks as i64))
}

/// Bracket, Jones polynomial and normalized h-expansion of a braid closure.
pub fn link_summary(braid: &str, kinks: i32, order: usize) -> Result<String, String> {
    let link = link_from(braid, kinks)?;
    let pd = link.pd();
    if pd.crossings().len() > MAX_BROWSER_CROSSINGS {
        return Err(format!(
            "at most {MAX_BROWSER_CROSSINGS} crossings in the browser"
        ));
    }
    let bracket = kauffman_bracket(&pd).map_err(|e| e.to_string())?;
    let jones = jones_polynomial(&pd, pd.writhe()).map_err(|e| e.to_string())?;
    let rep = sln_fundamental_ribbon(2).map_err(|e| e.to_string())?;
    let unknot = oriented_invariant(
        &catalog_link("unknot").map_err(|e| e.to_string())?.sliced(),
        &rep,
    )
    .map_err(|e| e.to_string())?;
    let value = oriented_invariant(&link.sliced(), &rep).map_err(|e| e.to_string())?;
    let series =
        hbar_expand_invariant(&value, order.min(8), Some(&unknot)).map_err(|e| e.to_string())?;
    Ok(json!({
        "writhe": pd.writhe(),
        "components": pd.component_count(),
        "bracket": bracket.render("A"),
        "jones": jones.render("t"),
        "expansion": series.render("h"),
    })
    .to_string())
}

/// Linking of two round circles of radius 1, the second in the xz-plane
/// centred at `(offset, 0, 0)`, and the self-linking of a circle whose
/// framing makes `twists` turns.
pub fn circles(offset: f64, samples: usize, twists: i32) -> Result<String, String> {
    let n = samples.clamp(8, MAX_SAMPLES);
    let a = ParamCurve::unit_circle(n);
    let b = ParamCurve::circle(n, [offset, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0], 1.0)
        .map_err(|e| e.to_string())?;
    let linking = gauss_linking(&a, &b).map_err(|e| e.to_string())?;
    let framed = a
        .twisted_framing(twists as i64)
        .map_err(|e| e.to_string())?;
    let self_linking = framed_self_linking(&framed, 0.05).map_err(|e| e.to_string())?;
    Ok(json!({"samples": n, "linking": linking, "self_linking": self_linking}).to_string())
}

/// Both sides of the partition-function identity for a builtin algebra in
/// its default representation.
pub fn character(algebra: &str, element: &str, order: usize) -> Result<String, String> {
    let (g, rep) = builtin(algebra.trim()).map_err(|e| e.to_string())?;
    let rep = rep.ok_or("this algebra has no default representation")?;
    let x = element
        .split(',')
        .map(|s| parse_rational(s.trim()).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let id = partition_function_identity(&g, &rep, &x, order.min(10)).map_err(|e| e.to_string())?;
    Ok(json!({"lhs": id.lhs.render("t"), "rhs": id.rhs.render("t"), "hbar_power": id.hbar_power, "holds": id.holds}).to_string())
}

#[wasm_bindgen(js_name = linkSummary)]
pub fn link_summary_js(braid: &str, kinks: i32, order: usize) -> Result<String, JsValue> {
    link_summary(braid, kinks, order).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = circles)]
pub fn circles_js(offset: f64, samples: usize, twists: i32) -> Result<String, JsValue> {
    circles(offset, samples, twists).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = character)]
pub fn character_js(algebra: &str, element: &str, order: usize) -> Result<String, JsValue> {
    character(algebra, element, order).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn trefoil_summary() {
        let v = parse(&link_summary("B2:1,1,1", 0, 4).unwrap());
        assert_eq!(v["jones"], "t + t^{3} - t^{4}");
        assert_eq!(v["writhe"], 3);
        let kinked = parse(&link_summary("trefoil", 2, 4).unwrap());
        assert_eq!(kinked["jones"], v["jones"]);
        assert_eq!(kinked["expansion"], v["expansion"]);
        assert!(link_summary("B2:5", 0, 4).is_err());
    }

    #[test]
    fn circle_linking() {
        let v = parse(&circles(1.0, 256, 1).unwrap());
        assert!((v["linking"].as_f64().unwrap().abs() - 1.0).abs() < 1e-2);
        assert!((v["self_linking"].as_f64().unwrap() - 1.0).abs() < 1e-2);
        let far = parse(&circles(3.0, 256, 0).unwrap());
        assert!(far["linking"].as_f64().unwrap().abs() < 1e-2);
        assert!(circles(0.0, 64, 0).is_err());
    }

    #[test]
    fn character_identity() {
        let v = parse(&character("sl2", "1,0,0", 6).unwrap());
        assert_eq!(v["holds"], true);
        assert!(character("sl2", "1,x", 6).is_err());
    }
}
