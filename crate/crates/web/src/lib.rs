//! WebAssembly entry points for the demo page in `www/`.

pub mod render;

use wasm_bindgen::prelude::*;

fn to_js(e: render::RenderError) -> JsError {
    JsError::new(&e.to_string())
}

/// Hasse diagram of the cobweb with `levels` levels, as SVG markup.
#[wasm_bindgen(js_name = hasseSvg)]
pub fn hasse_svg(sequence: &str, levels: usize) -> Result<String, JsError> {
    render::sequence(sequence).and_then(|f| render::hasse_svg(&f, levels)).map_err(to_js)
}

/// Mobius matrix as an HTML table.
#[wasm_bindgen(js_name = mobiusTable)]
pub fn mobius_table(sequence: &str, levels: usize) -> Result<String, JsError> {
    render::sequence(sequence).and_then(|f| render::mobius_table(&f, levels)).map_err(to_js)
}

/// Tiling of the box of levels `n-m+1..n` by copies of the box of levels `1..m`, as SVG.
#[wasm_bindgen(js_name = tilingSvg)]
pub fn tiling_svg(sequence: &str, m: usize, n: usize) -> Result<String, JsError> {
    render::sequence(sequence).and_then(|f| render::tiling_svg(&f, m, n)).map_err(to_js)
}

/// F-nomial coefficient, printed as an integer or a reduced fraction.
#[wasm_bindgen]
pub fn fnomial(sequence: &str, n: usize, k: usize) -> Result<String, JsError> {
    let f = render::sequence(sequence).map_err(to_js)?;
    f.fnomial(n, k).map(|v| v.to_string()).map_err(|e| JsError::new(&e.to_string()))
}
