//! Output formatting: pretty JSON for machines, aligned text for humans.

use clap::ValueEnum;
use quandle::{GroupPresentation, SeparationWitness, WpResult, WpVerdict};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Prints `value` as pretty JSON, or the `text` rendering of it.
pub fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(value).expect("serializable"))
        }
        Format::Text => println!("{}", text(value)),
    }
}

pub fn describe_wp(r: &WpResult) -> String {
    match &r.verdict {
        WpVerdict::Equal(trace) => {
            let mut s = String::from("equal\n");
            for (i, w) in trace.words().iter().enumerate() {
                if i == 0 {
                    s.push_str(&format!("    {w}"));
                } else {
                    s.push_str(&format!("\n  = {w}   [{:?}]", trace.moves()[i - 1]));
                }
            }
            s
        }
        WpVerdict::Distinct(w) => format!("distinct\n{}", describe_witness(w)),
        WpVerdict::Unknown(report) => format!(
            "unknown (rewrite length {} / catalog order {} / {} nodes)",
            report.max_len_reached, report.catalog_order_reached, report.nodes_spent
        ),
    }
}

pub fn describe_witness(w: &SeparationWitness) -> String {
    let target = w
        .hom
        .target
        .label()
        .map(str::to_owned)
        .unwrap_or_else(|| format!("{:?}", w.hom.target.rows()));
    let assign: Vec<String> = w
        .hom
        .source
        .generators()
        .iter()
        .zip(&w.hom.assign)
        .map(|(g, e)| format!("{g} -> {e}"))
        .collect();
    format!(
        "witness ({:?}) in order-{} quandle {target}\n  {}\n  images {} vs {}",
        w.heuristic,
        w.hom.target.order(),
        assign.join(", "),
        w.left_image,
        w.right_image
    )
}

pub fn describe_group(g: &GroupPresentation) -> String {
    let gens: Vec<String> = g.generators().iter().map(|x| x.name().to_owned()).collect();
    let mut s = format!("generators: {}\nrelators ({}):", gens.join(" "), g.relators().len());
    for r in g.relators() {
        s.push_str(&format!("\n  {r}"));
    }
    s
}

pub fn describe_link(o: &serde_json::Value) -> String {
    let gens = o["presentation"]["generators"]
        .as_array()
        .map_or(0, Vec::len);
    let rels = o["presentation"]["relations"].as_array().map_or(0, Vec::len);
    format!("link quandle with {gens} generators and {rels} relations")
}
