//! Deterministic SVG rendering of PL graphs, sign regions, leaf sets and
//! orbit points. Coordinates are computed exactly and rounded only when
//! written out.

use std::cmp::Ordering;
use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use lineact_core::rational::{fmt_rational, int, parse_rational, to_decimal};
use lineact_core::{PlMap, Rational, Window};
use serde_json::Value;
#[cfg(test)]
use serde_json::json;

const WIDTH: i64 = 640;
const HEIGHT: i64 = 480;
const MARGIN: i64 = 48;
const DIGITS: usize = 2;
const PALETTE: [&str; 6] = ["#1f4e9c", "#b8471b", "#2a7d3b", "#7a3a96", "#8a6d12", "#1d7b82"];

#[derive(Clone, Debug)]
pub enum PlotItem {
    Graph { label: String, map: PlMap, shade_sign: bool },
    Leaves { label: String, leaves: Vec<(Rational, Rational)> },
    Points { label: String, points: Vec<Rational> },
}

impl PlotItem {
    fn label(&self) -> &str {
        match self {
            PlotItem::Graph { label, .. } | PlotItem::Leaves { label, .. } | PlotItem::Points { label, .. } => label,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PlotSpec {
    pub window: Window,
    pub items: Vec<PlotItem>,
}

fn rational_field(v: &Value, what: &str) -> Result<Rational> {
    let s = v.as_str().ok_or_else(|| anyhow!("{what}: expected a string fraction"))?;
    Ok(parse_rational(s)?)
}

pub fn parse_window(text: &str) -> Result<Window> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| anyhow!("window must be written as left,right"))?;
    Ok(Window::new(parse_rational(a.trim())?, parse_rational(b.trim())?)?)
}

impl PlotSpec {
    pub fn new(window: Window, items: Vec<PlotItem>) -> Result<Self> {
        if items.is_empty() {
            bail!("plot spec has no items");
        }
        Ok(PlotSpec { window, items })
    }

    /// JSON form: `{"window": "a,b", "items": [...]}` with items of kind
    /// `graph` (`map`: plmap record, optional `shade_sign`), `leaves`
    /// (`leaves`: list of `[a, b]`) or `points` (`points`: list); every
    /// number is a string fraction.
    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).context("plot spec is not valid JSON")?;
        let window = parse_window(v["window"].as_str().ok_or_else(|| anyhow!("missing window"))?)?;
        let raw = v["items"].as_array().ok_or_else(|| anyhow!("missing items"))?;
        let mut items = Vec::new();
        for it in raw {
            let label = it["label"].as_str().unwrap_or("").to_string();
            let item = match it["kind"].as_str() {
                Some("graph") => PlotItem::Graph {
                    label,
                    map: PlMap::from_record(it["map"].as_str().ok_or_else(|| anyhow!("graph without map"))?)?,
                    shade_sign: it["shade_sign"].as_bool().unwrap_or(false),
                },
                Some("leaves") => {
                    let leaves = it["leaves"]
                        .as_array()
                        .ok_or_else(|| anyhow!("leaves item without leaves"))?
                        .iter()
                        .map(|pair| {
                            let a = rational_field(&pair[0], "leaf")?;
                            let b = rational_field(&pair[1], "leaf")?;
                            if a >= b {
                                bail!("empty leaf ({a}, {b})");
                            }
                            Ok((a, b))
                        })
                        .collect::<Result<_>>()?;
                    PlotItem::Leaves { label, leaves }
                }
                Some("points") => PlotItem::Points {
                    label,
                    points: it["points"]
                        .as_array()
                        .ok_or_else(|| anyhow!("points item without points"))?
                        .iter()
                        .map(|p| rational_field(p, "point"))
                        .collect::<Result<_>>()?,
                },
                other => bail!("unknown plot item kind {other:?}"),
            };
            items.push(item);
        }
        PlotSpec::new(window, items)
    }

    #[cfg(test)]
    pub fn to_json(&self) -> Value {
        let items: Vec<Value> = self
            .items
            .iter()
            .map(|it| match it {
                PlotItem::Graph { label, map, shade_sign } => json!({
                    "kind": "graph", "label": label, "map": map.to_record(), "shade_sign": shade_sign
                }),
                PlotItem::Leaves { label, leaves } => json!({
                    "kind": "leaves",
                    "label": label,
                    "leaves": leaves.iter().map(|(a, b)| json!([fmt_rational(a), fmt_rational(b)])).collect::<Vec<_>>()
                }),
                PlotItem::Points { label, points } => json!({
                    "kind": "points", "label": label, "points": points.iter().map(fmt_rational).collect::<Vec<_>>()
                }),
            })
            .collect();
        json!({
            "window": format!("{},{}", fmt_rational(self.window.left()), fmt_rational(self.window.right())),
            "items": items
        })
    }
}

struct Viewport {
    x0: Rational,
    x1: Rational,
    y0: Rational,
    y1: Rational,
}

impl Viewport {
    fn px(&self, x: &Rational) -> String {
        let span = int(WIDTH - 2 * MARGIN);
        to_decimal(&(int(MARGIN) + (x - &self.x0) * span / (&self.x1 - &self.x0)), DIGITS)
    }

    fn py(&self, y: &Rational) -> String {
        let span = int(HEIGHT - 2 * MARGIN);
        to_decimal(&(int(HEIGHT - MARGIN) - (y - &self.y0) * span / (&self.y1 - &self.y0)), DIGITS)
    }

    fn width_px(&self, a: &Rational, b: &Rational) -> Rational {
        (b - a) * int(WIDTH - 2 * MARGIN) / (&self.x1 - &self.x0)
    }
}

fn clamp(x: &Rational, w: &Window) -> Rational {
    x.clamp(w.left(), w.right()).clone()
}

pub fn render(spec: &PlotSpec) -> String {
    let w = &spec.window;
    let mut y0 = w.left().clone();
    let mut y1 = w.right().clone();
    for it in &spec.items {
        if let PlotItem::Graph { map, .. } = it {
            y0 = y0.min(map.evaluate(w.left()));
            y1 = y1.max(map.evaluate(w.right()));
        }
    }
    let vp = Viewport {
        x0: w.left().clone(),
        x1: w.right().clone(),
        y0,
        y1,
    };
    let bottom = int(HEIGHT - MARGIN);
    let bottom_px = to_decimal(&bottom, DIGITS);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"##
    );
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"##);
    let _ = writeln!(
        out,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="#999" stroke-width="1"/>"##,
        WIDTH - 2 * MARGIN,
        HEIGHT - 2 * MARGIN
    );
    let _ = writeln!(
        out,
        r##"<text x="{MARGIN}" y="{}" font-size="11" font-family="monospace">{}</text>"##,
        HEIGHT - MARGIN + 16,
        fmt_rational(w.left())
    );
    let _ = writeln!(
        out,
        r##"<text x="{}" y="{}" font-size="11" font-family="monospace" text-anchor="end">{}</text>"##,
        WIDTH - MARGIN,
        HEIGHT - MARGIN + 16,
        fmt_rational(w.right())
    );

    let has_graph = spec.items.iter().any(|it| matches!(it, PlotItem::Graph { .. }));
    if has_graph {
        let (a, b) = (clamp(&vp.y0, w), clamp(&vp.y1, w));
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#bbb" stroke-dasharray="4 3"/>"##,
            vp.px(&a),
            vp.py(&a),
            vp.px(&b),
            vp.py(&b)
        );
    }

    for (idx, it) in spec.items.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        match it {
            PlotItem::Graph { map, shade_sign, .. } => {
                if *shade_sign {
                    for m in map.fixed_set(w).moved {
                        let fill = if m.sign == Ordering::Greater { "#d9ead3" } else { "#f4cccc" };
                        let _ = writeln!(
                            out,
                            r##"<rect x="{}" y="{MARGIN}" width="{}" height="{}" fill="{fill}" fill-opacity="0.6"/>"##,
                            vp.px(&m.left),
                            to_decimal(&vp.width_px(&m.left, &m.right), DIGITS),
                            HEIGHT - 2 * MARGIN
                        );
                    }
                }
                let mut xs = vec![w.left().clone()];
                xs.extend(map.breakpoints().iter().filter(|x| w.contains(x)).cloned());
                xs.push(w.right().clone());
                xs.dedup();
                let pts: Vec<String> = xs
                    .iter()
                    .map(|x| format!("{},{}", vp.px(x), vp.py(&map.evaluate(x))))
                    .collect();
                let _ = writeln!(
                    out,
                    r##"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"##,
                    pts.join(" ")
                );
            }
            PlotItem::Leaves { leaves, .. } => {
                let ratio = Rational::new(int(HEIGHT - 2 * MARGIN).to_integer(), int(WIDTH - 2 * MARGIN).to_integer());
                for (a, b) in leaves {
                    let (a, b) = (clamp(a, w), clamp(b, w));
                    let rx = vp.width_px(&a, &b) / int(2);
                    let ry = &rx * &ratio;
                    let _ = writeln!(
                        out,
                        r##"<path d="M {} {bottom_px} A {} {} 0 0 1 {} {bottom_px}" fill="none" stroke="{color}" stroke-width="1.2"/>"##,
                        vp.px(&a),
                        to_decimal(&rx, DIGITS),
                        to_decimal(&ry, DIGITS),
                        vp.px(&b)
                    );
                }
            }
            PlotItem::Points { points, .. } => {
                for p in points.iter().filter(|p| w.contains(p)) {
                    let _ = writeln!(
                        out,
                        r##"<circle cx="{}" cy="{bottom_px}" r="2.5" fill="{color}"/>"##,
                        vp.px(p)
                    );
                }
            }
        }
    }

    for (idx, it) in spec.items.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let _ = writeln!(
            out,
            r##"<text x="{}" y="{}" font-size="12" font-family="monospace" fill="{color}">{}</text>"##,
            MARGIN + 4,
            MARGIN + 14 + 14 * idx as i64,
            escape(it.label())
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
