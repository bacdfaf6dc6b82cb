use std::fmt::{Display, Write};

use cobweb::hyperbox::{
    chain_box_bijection, tile_count, tile_with_limit, verify_block_partition, verify_tiling, TilingOutcome,
};
use cobweb::incidence::{char_poly, coding_matrix, staircase, whitney_first, whitney_second, zeta_closure};
use cobweb::relations::TernaryExample;
use cobweb::structure::{cobweb_realizer, structure_report, verify_realizer, DEFAULT_EXTENSION_CAP};
use cobweb::{FinitePoset, GradedPoset, IntMatrix, NaryRelation};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::config::{CliError, CommandConfig, Format};
use crate::{suite, Command};

/// Rendered command output and whether every verification it ran succeeded.
pub struct Output {
    pub text: String,
    pub verified: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, verified: true }
    }

    fn json(value: Value) -> Self {
        Self::ok(format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable")))
    }
}

/// Largest chain set listed by `chains --format csv` or checked against its box.
const CHAIN_LISTING_CAP: u64 = 100_000;
const TILE_COUNT_CAP: u64 = 1_000;

pub fn run(command: &Command, config: &CommandConfig) -> Result<Output, CliError> {
    let f = &config.seq;
    match *command {
        Command::Fnomial { n, k } => fnomial(config, n, k),
        Command::Admissible { n } => admissible(config, n),
        Command::Zeta { n } => {
            let n = config.levels_or(n)?;
            matrix(config, &zeta_closure(&GradedPoset::cobweb(f, n)?))
        }
        Command::Mobius { n } => {
            let n = config.levels_or(n)?;
            matrix(config, &coding_matrix(f, n)?.expand(f)?)
        }
        Command::Scala { n } => {
            config.require(&[Format::Text])?;
            Ok(Output::ok(staircase(&GradedPoset::cobweb(f, config.levels_or(n)?)?)))
        }
        Command::Whitney { n } => whitney(config, config.levels_or(n)?),
        Command::Charpoly { n } => {
            config.require(&[Format::Text, Format::Json])?;
            let n = config.levels_or(n)?;
            let poly = char_poly(f, n)?;
            if config.format == Format::Json {
                let coeffs: Vec<Value> = poly.coefficients().iter().rev().map(number).collect();
                return Ok(Output::json(json!({ "sequence": f.to_string(), "rank": n, "descending": coeffs })));
            }
            Ok(Output::ok(format!("{poly}\n")))
        }
        Command::Chains { k, n } => chains(config, k, n),
        Command::Tile { m, n } => tiling(config, m, n),
        Command::TileCount { m, n } => {
            config.require(&[Format::Text, Format::Json])?;
            let c = tile_count(f, m, n, config.cap_or(TILE_COUNT_CAP))?;
            if config.format == Format::Json {
                return Ok(Output::json(json!({ "count": c.count, "complete": c.exhausted, "nodes": c.nodes })));
            }
            let prefix = if c.exhausted { "" } else { "at least " };
            Ok(Output::ok(format!("{prefix}{} tilings ({} search nodes)\n", c.count, c.nodes)))
        }
        Command::JoinDemo => join_demo(config),
        Command::Realizer { n } => realizer(config, config.levels_or(n)?),
        Command::Structure { n } => structure(config, config.levels_or(n)?),
        Command::Poset { n } => poset(config, config.levels_or(n)?),
        Command::Check => {
            config.require(&[Format::Text])?;
            let report = suite::run(f, config.levels.unwrap_or(5), config.cap_or(suite::DEFAULT_VERTEX_CAP))?;
            Ok(Output { verified: report.passed(), text: report.render() })
        }
    }
}

fn number(v: impl Display) -> Value {
    serde_json::from_str(&v.to_string()).unwrap_or_else(|_| Value::String(v.to_string()))
}

fn fnomial(config: &CommandConfig, n: usize, k: usize) -> Result<Output, CliError> {
    config.require(&[Format::Text, Format::Json])?;
    if k > n {
        return Err(CliError::Usage(format!("k = {k} exceeds n = {n}")));
    }
    let value = config.seq.fnomial(n, k)?;
    if config.format == Format::Json {
        let integral = value.is_integer();
        let shown = if integral { number(value.to_integer()) } else { Value::String(value.to_string()) };
        return Ok(Output::json(json!({ "sequence": config.seq.to_string(), "n": n, "k": k, "value": shown, "integral": integral })));
    }
    Ok(Output::ok(format!("{value}\n")))
}

fn admissible(config: &CommandConfig, n: usize) -> Result<Output, CliError> {
    config.require(&[Format::Text, Format::Json])?;
    let report = config.seq.is_admissible(n)?;
    let witness = match report.witness {
        Some((a, b)) => Some((a, b, config.seq.fnomial(a, b)?)),
        None => None,
    };
    if config.format == Format::Json {
        let w = witness.as_ref().map(|(a, b, v)| json!({ "n": a, "k": b, "value": v.to_string() }));
        return Ok(Output::json(json!({ "sequence": config.seq.to_string(), "checked_up_to": n, "admissible": w.is_none(), "witness": w })));
    }
    Ok(Output::ok(match witness {
        None => format!("{} is admissible up to n = {n}\n", config.seq),
        Some((a, b, v)) => format!("{} is not admissible: F-nomial({a}, {b}) = {v}\n", config.seq),
    }))
}

fn matrix(config: &CommandConfig, m: &IntMatrix) -> Result<Output, CliError> {
    config.require(&[Format::Text, Format::Json, Format::Csv])?;
    Ok(match config.format {
        Format::Csv => Output::ok(m.to_csv()),
        Format::Json => Output::json(m.to_json()),
        _ => {
            let cells: Vec<Vec<String>> =
                (0..m.size()).map(|i| (0..m.size()).map(|j| m.get(i, j).to_string()).collect()).collect();
            let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
            let mut text = String::new();
            for row in cells {
                let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                let _ = writeln!(text, "{}", padded.join(" "));
            }
            Output::ok(text)
        }
    })
}

fn whitney(config: &CommandConfig, n: usize) -> Result<Output, CliError> {
    config.require(&[Format::Text, Format::Json, Format::Csv])?;
    let rows = (0..=n)
        .map(|r| Ok((r, whitney_first(&config.seq, r)?, whitney_second(&config.seq, r)?)))
        .collect::<Result<Vec<_>, cobweb::Error>>()?;
    Ok(match config.format {
        Format::Json => Output::json(json!({
            "sequence": config.seq.to_string(),
            "first_kind": rows.iter().map(|(_, w, _)| number(w)).collect::<Vec<_>>(),
            "second_kind": rows.iter().map(|(_, _, w)| number(w)).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut text = String::from("rank,first_kind,second_kind\n");
            for (r, w, v) in &rows {
                let _ = writeln!(text, "{r},{w},{v}");
            }
            Output::ok(text)
        }
        _ => {
            let mut text = String::new();
            let _ = writeln!(text, "{:>4} {:>16} {:>16}", "rank", "first kind", "second kind");
            for (r, w, v) in &rows {
                let _ = writeln!(text, "{r:>4} {w:>16} {v:>16}");
            }
            Output::ok(text)
        }
    })
}

fn chains(config: &CommandConfig, k: usize, n: usize) -> Result<Output, CliError> {
    config.require(&[Format::Text, Format::Json, Format::Csv])?;
    if k == 0 || k > n {
        return Err(CliError::Usage(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let f = &config.seq;
    let layer = GradedPoset::cobweb_levels(f, k, n)?;
    let count = layer.max_chain_count();
    let cap = config.cap_or(CHAIN_LISTING_CAP);
    let small = count <= BigUint::from(cap);
    if config.format == Format::Csv {
        if !small {
            return Err(CliError::Usage(format!("{count} chains exceed the listing cap {cap}; raise --cap")));
        }
        let mut text = String::new();
        layer.for_each_max_chain(|chain| {
            let cells: Vec<String> = chain.iter().map(|s| (s + 1).to_string()).collect();
            let _ = writeln!(text, "{}", cells.join(","));
        });
        return Ok(Output::ok(text));
    }
    let partition = verify_block_partition(f, n, k - 1)?;
    let bijection = if small { Some(chain_box_bijection(f, k, n)?) } else { None };
    let partition_ok = partition.partition.as_ref().is_none_or(|p| p.is_valid());
    let verified = partition.identity_holds && partition_ok && bijection.as_ref().is_none_or(|b| b.is_bijection());
    let block_count = partition.fnomial.to_string();
    if config.format == Format::Json {
        return Ok(Output {
            verified,
            text: Output::json(json!({
                "sequence": f.to_string(),
                "levels": [k, n],
                "chains": number(&count),
                "blocks": block_count,
                "block_size": number(&partition.block_size),
                "identity_holds": partition.identity_holds,
                "partition_valid": partition.partition.as_ref().map(|p| p.is_valid()),
                "box_bijection": bijection.as_ref().map(|b| b.is_bijection()),
            }))
            .text,
        });
    }
    let mut text = String::new();
    let _ = writeln!(text, "maximal chains from level {k} to {n}: {count}");
    let _ = writeln!(
        text,
        "{block_count} blocks of size {} ({}), counting identity {}",
        partition.block_size,
        if partition.integral { "integral" } else { "not integral" },
        verdict(partition.identity_holds)
    );
    match &partition.partition {
        Some(p) => {
            let _ = writeln!(text, "block partition: {} blocks of {}, {}", p.blocks, p.block_size, verdict(p.is_valid()));
        }
        None => text.push_str("block partition: not materialized\n"),
    }
    match &bijection {
        Some(b) => {
            let _ = writeln!(text, "chains onto box points: {} chains, {} points, {}", b.chains, b.points, verdict(b.is_bijection()));
        }
        None => {
            let _ = writeln!(text, "chains onto box points: skipped above {cap} chains");
        }
    }
    Ok(Output { text, verified })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn tiling(config: &CommandConfig, m: usize, n: usize) -> Result<Output, CliError> {
    config.require(&[Format::Text, Format::Json])?;
    let f = &config.seq;
    let outcome = tile_with_limit(f, m, n, config.cap)?;
    let json = config.format == Format::Json;
    Ok(match outcome {
        TilingOutcome::Found(t) => {
            let check = verify_tiling(&t, f, m);
            let text = if json {
                format!("{}\n", t.to_json())
            } else {
                let extents: Vec<String> = t.target.extents().iter().map(ToString::to_string).collect();
                let mut text = format!("{} tiles cover the {} box\n", t.tiles.len(), extents.join(" x "));
                match t.render_grid() {
                    Some(grid) => text.push_str(&grid),
                    None => {
                        for tile in &t.tiles {
                            let parts: Vec<String> = tile.intervals.iter().map(|(a, b)| format!("[{a},{b}]")).collect();
                            let _ = writeln!(text, "{}", parts.join(" x "));
                        }
                    }
                }
                if let Err(e) = &check {
                    let _ = writeln!(text, "verification FAILED: {e}");
                }
                text
            };
            Output { text, verified: check.is_ok() }
        }
        TilingOutcome::Exhausted { nodes } => {
            if json {
                Output::json(json!({ "tiling": null, "exhausted": true, "nodes": nodes }))
            } else {
                Output::ok(format!("no tiling exists (search exhausted after {nodes} nodes)\n"))
            }
        }
        TilingOutcome::LimitReached { nodes } => {
            let text = if json {
                Output::json(json!({ "tiling": null, "exhausted": false, "nodes": nodes })).text
            } else {
                format!("undecided: node limit reached after {nodes} nodes\n")
            };
            Output { text, verified: false }
        }
    })
}

fn relation_lines(r: &NaryRelation) -> String {
    r.named_tuples().iter().map(|t| format!("  ({})\n", t.join(", "))).collect()
}

fn join_demo(config: &CommandConfig) -> Result<Output, CliError> {
    config.require(&[Format::Text, Format::Json])?;
    let ex = TernaryExample::new();
    let composed = ex.composed();
    let d = ex.discrepancy();
    if config.format == Format::Json {
        return Ok(Output::json(json!({
            "left": ex.e1.named_tuples(),
            "right": ex.e2.named_tuples(),
            "composed": composed.named_tuples(),
            "reference": ex.reference.named_tuples(),
            "only_composed": d.only_left,
            "only_reference": d.only_right,
        })));
    }
    let mut text = String::new();
    let _ = write!(text, "E1 over X x Z:\n{}", relation_lines(&ex.e1));
    let _ = write!(text, "E2 over Z x Y:\n{}", relation_lines(&ex.e2));
    let _ = write!(text, "E1 joined with E2 over Z:\n{}", relation_lines(&composed));
    if d.is_empty() {
        text.push_str("matches the reference relation\n");
    } else {
        text.push_str("differs from the reference relation:\n");
        match d.single_coordinate_pairs() {
            Some(pairs) => {
                for (l, r, c) in pairs {
                    let _ = writeln!(text, "  derived ({}) vs reference ({}), coordinate {}", l.join(", "), r.join(", "), c + 1);
                }
            }
            None => {
                let _ = writeln!(text, "  only derived: {:?}\n  only reference: {:?}", d.only_left, d.only_right);
            }
        }
    }
    Ok(Output::ok(text))
}

fn realizer(config: &CommandConfig, n: usize) -> Result<Output, CliError> {
    config.require(&[Format::Text, Format::Json])?;
    let (p, r) = cobweb_realizer(&config.seq, n)?;
    let orders: Vec<Vec<usize>> = r.extensions.iter().map(|e| e.order().to_vec()).collect();
    let verified = verify_realizer(&p, &orders)?;
    let named: Vec<Vec<String>> = r.extensions.iter().map(|e| e.labels(&p)).collect();
    if config.format == Format::Json {
        let mut out = Output::json(json!({ "extensions": named, "degenerate": r.degenerate, "realizer": verified }));
        out.verified = verified;
        return Ok(out);
    }
    let mut text = String::new();
    for (i, ext) in named.iter().enumerate() {
        let _ = writeln!(text, "L{}: {}", i + 1, ext.join(" "));
    }
    let _ = writeln!(text, "intersection equals the order: {}", verdict(verified));
    if r.degenerate {
        text.push_str("every level is a singleton, so one extension already suffices\n");
    }
    Ok(Output { text, verified })
}

fn structure(config: &CommandConfig, n: usize) -> Result<Output, CliError> {
    config.require(&[Format::Text, Format::Json])?;
    let p = FinitePoset::from_graded(&GradedPoset::cobweb(&config.seq, n)?);
    let cap = config.cap_or(DEFAULT_EXTENSION_CAP as u64).to_usize().unwrap_or(usize::MAX);
    let report = structure_report(&p, cap).map_err(|e| match e {
        cobweb::Error::CapExceeded { size, cap } => {
            CliError::Usage(format!("{size} elements exceed the extension cap {cap}; raise --cap"))
        }
        other => other.into(),
    })?;
    let witness = report.n_witness.map(|w| w.map(|i| p.labels()[i].clone()));
    if config.format == Format::Json {
        return Ok(Output::json(json!({
            "size": report.size,
            "n_free": report.n_free,
            "n_witness": witness,
            "linear_extensions": report.extensions,
            "jump_number": report.jump_number,
            "greedy_extensions": report.greedy,
            "optimal_extensions": report.optimal,
            "greedy": report.is_greedy,
            "reversible": report.is_reversible,
        })));
    }
    let mut text = String::new();
    let _ = writeln!(text, "elements: {}", report.size);
    match &witness {
        None => text.push_str("N-free: yes\n"),
        Some([a, b, c, d]) => {
            let _ = writeln!(text, "N-free: no ({a} < {c}, {b} < {c}, {b} < {d})");
        }
    }
    let _ = writeln!(text, "linear extensions: {}", report.extensions);
    let _ = writeln!(text, "jump number: {}", report.jump_number);
    let _ = writeln!(text, "greedy extensions: {} (optimal: {})", report.greedy, report.optimal);
    let _ = writeln!(text, "greedy poset: {}", yes_no(report.is_greedy));
    let _ = writeln!(text, "reversible: {}", yes_no(report.is_reversible));
    Ok(Output::ok(text))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn poset(config: &CommandConfig, n: usize) -> Result<Output, CliError> {
    let p = GradedPoset::cobweb(&config.seq, n)?;
    Ok(match config.format {
        Format::Dot => Output::ok(p.to_dot()),
        Format::Json => Output::ok(format!("{}\n", p.to_json())),
        Format::Csv => {
            let a = p.adjacency_matrix();
            let mut text = String::new();
            for row in a.to_rows() {
                let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
                let _ = writeln!(text, "{}", cells.join(","));
            }
            Output::ok(text)
        }
        Format::Text => {
            let mut text = String::new();
            for t in (p.first_level()..=p.last_level()).rev() {
                let names: Vec<String> = p.level(t).iter().map(ToString::to_string).collect();
                let _ = writeln!(text, "level {t}: {}", names.join(" "));
            }
            let _ = writeln!(text, "{} vertices, {} cover edges", p.vertex_count(), p.edge_count());
            Output::ok(text)
        }
    })
}
