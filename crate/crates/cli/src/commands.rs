use std::collections::HashSet;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use gentle_core::ar::LongKind;
use gentle_core::*;
use serde_json::{json, Value};

use crate::{check, Cli, Command, SCHEMA};

pub struct Output {
    pub text: String,
    pub ok: bool,
}

impl Output {
    fn plain(lines: Vec<String>) -> Self {
        let mut text = lines.join("\n");
        if !text.is_empty() {
            text.push('\n');
        }
        Output { text, ok: true }
    }

    fn json(command: &str, mut body: Value) -> Self {
        let mut env = json!({ "schema": SCHEMA, "command": command });
        if let (Some(e), Some(b)) = (env.as_object_mut(), body.as_object_mut()) {
            e.append(b);
        }
        Output {
            text: format!("{}\n", serde_json::to_string_pretty(&env).expect("json")),
            ok: true,
        }
    }

    fn failing(mut self, failed: bool) -> Self {
        self.ok = !failed;
        self
    }
}

fn load(path: &Path) -> Result<BoundQuiver> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_quiver(&text).map_err(|e| anyhow!("bound_quiver: {}: {e}", path.display()))
}

fn load_fringed(path: &Path) -> Result<FringedAlgebra> {
    let q = load(path)?;
    fringe(&q).map_err(|e| anyhow!("fringe: {e}"))
}

fn string_arg(q: &BoundQuiver, text: &str) -> Result<StringWalk> {
    parse_string(q, text).map_err(|e| anyhow!("strings: `{text}`: {e}"))
}

fn tilting<T>(r: Result<T, TiltingError>) -> Result<T> {
    r.map_err(|e| anyhow!("tau_tilting: {e}"))
}

fn collection_at(f: &FringedAlgebra, index: usize) -> Result<Collection> {
    let all = tilting(maximal_collections(f))?;
    let n = all.len();
    all.into_iter()
        .nth(index)
        .ok_or_else(|| anyhow!("tau_tilting: collection index {index} out of range (0..{n})"))
}

fn items_json(q: &BoundQuiver, c: &Collection) -> Value {
    json!(c.items.iter().map(|i| i.display(q)).collect::<Vec<_>>())
}

fn long_kind(f: &FringedAlgebra, l: &LongString) -> String {
    match &l.kind {
        LongKind::Cohook { base, .. } => {
            format!("cohook({})", base.canonical(&f.base).display(&f.base))
        }
        LongKind::Injective(v) => format!("I({})", f.hat.vertex_name(*v)),
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    let json = cli.json;
    match &cli.command {
        Command::Validate(input) => {
            let q = load(&input.file)?;
            let r = validate_gentle(&q);
            let yes = |b: bool| if b { "yes" } else { "no" };
            let out = if json {
                Output::json(
                    "validate",
                    json!({
                        "algebra": q.name(),
                        "gentle": r.is_gentle,
                        "string_algebra": r.is_string_algebra,
                        "violations": r.violations.iter()
                            .map(|v| json!({ "axiom": v.axiom.to_string(), "witness": v.witness }))
                            .collect::<Vec<_>>(),
                    }),
                )
            } else {
                let mut lines = vec![
                    format!("gentle: {}", yes(r.is_gentle)),
                    format!("string algebra: {}", yes(r.is_string_algebra)),
                ];
                lines.extend(
                    r.violations
                        .iter()
                        .map(|v| format!("{}: {}", v.axiom, v.witness)),
                );
                Output::plain(lines)
            };
            Ok(out.failing(!r.is_gentle))
        }
        Command::Strings { input, max_len } => {
            let q = load(&input.file)?;
            let strings = enumerate_strings(&q, *max_len).map_err(|e| {
                let band = detect_bands(&q)
                    .first()
                    .map(|b| b.word.display(&q))
                    .unwrap_or_default();
                anyhow!("strings: {e} (band {band})")
            })?;
            let names: Vec<String> = strings.iter().map(|w| w.display(&q)).collect();
            let bands: Vec<String> = detect_bands(&q)
                .iter()
                .map(|b| b.word.display(&q))
                .collect();
            Ok(if json {
                Output::json(
                    "strings",
                    json!({ "algebra": q.name(), "strings": names, "bands": bands }),
                )
            } else {
                Output::plain(names)
            })
        }
        Command::Fringe { input, output } => {
            let f = load_fringed(&input.file)?;
            let text = serialize_quiver(&f.hat);
            if let Some(path) = output {
                fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            }
            let census = f.arrow_census();
            Ok(if json {
                Output::json(
                    "fringe",
                    json!({
                        "algebra": f.hat.name(),
                        "quiver": text,
                        "fringe_vertices": f.fringe_vertices.len(),
                        "sink_fringe_vertices": f.sink_fringe_vertices().len(),
                        "arrows": census.hat_arrows,
                    }),
                )
            } else if output.is_some() {
                Output::plain(vec![])
            } else {
                Output { text, ok: true }
            })
        }
        Command::Tau {
            input,
            string,
            fringed,
        } => {
            let f = load_fringed(&input.file)?;
            let w = string_arg(&f.base, string)?;
            let shown = if *fringed {
                cohook_completion(&f, &w)
                    .walk
                    .canonical(&f.hat)
                    .display(&f.hat)
            } else {
                tau(&f.base, &w).display(&f.base)
            };
            Ok(if json {
                Output::json(
                    "tau",
                    json!({ "string": w.display(&f.base), "fringed": fringed, "tau": shown }),
                )
            } else {
                Output::plain(vec![shown])
            })
        }
        Command::Kiss { input, x, y } => {
            let f = load_fringed(&input.file)?;
            let (x, y) = (string_arg(&f.base, x)?, string_arg(&f.base, y)?);
            let (cx, cy) = (cohook_completion(&f, &x), cohook_completion(&f, &y));
            let ks = kisses(&f, &cx, &cy);
            let tok = |l: Letter| l.token(&f.hat);
            Ok(if json {
                let list: Vec<Value> = ks
                    .iter()
                    .map(|k| {
                        json!({
                            "source": [k.pair.quotient.start, k.pair.quotient.end],
                            "target": [k.pair.submodule.start, k.pair.submodule.end],
                            "flip": k.pair.flip,
                            "flanks": k.flanks.iter().map(|&l| tok(l)).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                Output::json(
                    "kiss",
                    json!({
                        "from": cx.walk.display(&f.hat),
                        "to": cy.walk.display(&f.hat),
                        "kisses": list,
                        "count": ks.len(),
                    }),
                )
            } else {
                let mut lines = vec![
                    format!("from: {}", cx.walk.display(&f.hat)),
                    format!("to: {}", cy.walk.display(&f.hat)),
                ];
                for k in &ks {
                    let [a, b, c, d] = k.flanks;
                    lines.push(format!(
                        "kiss: source {}..{} target {}..{}{} flanks {} {} | {} {}",
                        k.pair.quotient.start,
                        k.pair.quotient.end,
                        k.pair.submodule.start,
                        k.pair.submodule.end,
                        if k.pair.flip { " reversed" } else { "" },
                        tok(a),
                        tok(b),
                        tok(c),
                        tok(d)
                    ));
                }
                lines.push(format!("count: {}", ks.len()));
                Output::plain(lines)
            })
        }
        Command::Homdim { input, x, y, tau } => {
            let f = load_fringed(&input.file)?;
            let (x, y) = (string_arg(&f.base, x)?, string_arg(&f.base, y)?);
            let dim = if *tau {
                hom_tau_dim(&f, &x, &y)
            } else {
                hom_dim(&f.base, &x, &y)
            };
            Ok(if json {
                Output::json("homdim", json!({ "tau": tau, "dim": dim }))
            } else {
                Output::plain(vec![dim.to_string()])
            })
        }
        Command::Ext { input, y, x } => {
            let f = load_fringed(&input.file)?;
            let (y, x) = (string_arg(&f.base, y)?, string_arg(&f.base, x)?);
            let basis = ext_basis(&f.base, &y, &x);
            let seqs: Vec<String> = basis.iter().map(|s| s.display(&f.base)).collect();
            Ok(if json {
                Output::json("ext", json!({ "dim": basis.len(), "sequences": seqs }))
            } else {
                let mut lines = vec![format!("dim Ext1: {}", basis.len())];
                lines.extend(seqs);
                Output::plain(lines)
            })
        }
        Command::Sttilt(input) => {
            let f = load_fringed(&input.file)?;
            let all = tilting(maximal_collections(&f))?;
            Ok(if json {
                let list: Vec<Value> = all.iter().map(|c| items_json(&f.base, c)).collect();
                Output::json("sttilt", json!({ "count": all.len(), "collections": list }))
            } else {
                Output::plain(all.iter().map(|c| c.display(&f.base)).collect())
            })
        }
        Command::Poset { input, dot } => {
            let f = load_fringed(&input.file)?;
            let p = tilting(poset(&f))?;
            if let Some(path) = dot {
                fs::write(path, p.to_dot(&f.base))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(if json {
                let covers: Vec<Value> = p
                    .covers
                    .iter()
                    .map(|c| json!({ "upper": c.upper, "lower": c.lower, "kisses": c.kisses }))
                    .collect();
                Output::json(
                    "poset",
                    json!({
                        "nodes": p.nodes.iter().map(|c| items_json(&f.base, c)).collect::<Vec<_>>(),
                        "covers": covers,
                        "top": p.top,
                        "bottom": p.bottom,
                    }),
                )
            } else {
                let mut lines = vec![
                    format!("nodes: {}", p.nodes.len()),
                    format!("covers: {}", p.covers.len()),
                ];
                lines.extend(
                    p.nodes
                        .iter()
                        .enumerate()
                        .map(|(i, c)| format!("{i}: {}", c.display(&f.base))),
                );
                lines.extend(
                    p.covers
                        .iter()
                        .map(|c| format!("{} -> {} kisses {}", c.upper, c.lower, c.kisses)),
                );
                Output::plain(lines)
            })
        }
        Command::Mc {
            input,
            torsion_of,
            arrow,
        } => {
            let f = load_fringed(&input.file)?;
            let c = collection_at(&f, *torsion_of)?;
            let s: HashSet<StringWalk> = tilting(torsion_class_strings(&f.base, &c, None))?
                .into_iter()
                .collect();
            let arrows: Vec<ArrowId> = match arrow {
                Some(name) => vec![f
                    .hat
                    .arrow(name)
                    .ok_or_else(|| anyhow!("fringe: unknown arrow `{name}`"))?],
                None => (0..f.hat.num_arrows()).collect(),
            };
            let mut rows = Vec::new();
            for a in arrows {
                let l = tilting(mc_walk(&f, &s, a))?;
                rows.push((
                    f.hat.arrow_name(a).to_string(),
                    l.walk.canonical(&f.hat).display(&f.hat),
                    long_kind(&f, &l),
                ));
            }
            Ok(if json {
                let list: Vec<Value> = rows
                    .iter()
                    .map(|(a, w, k)| json!({ "arrow": a, "walk": w, "kind": k }))
                    .collect();
                Output::json(
                    "mc",
                    json!({ "collection": items_json(&f.base, &c), "walks": list }),
                )
            } else {
                Output::plain(
                    rows.iter()
                        .map(|(a, w, k)| format!("{a}: {w}  [{k}]"))
                        .collect(),
                )
            })
        }
        Command::Census {
            input,
            all,
            torsion_of,
        } => {
            let f = load_fringed(&input.file)?;
            let colls: Vec<(usize, Collection)> = match (all, torsion_of) {
                (true, _) => tilting(maximal_collections(&f))?
                    .into_iter()
                    .enumerate()
                    .collect(),
                (false, Some(i)) => vec![(*i, collection_at(&f, *i)?)],
                (false, None) => bail!("census: pass --all or --torsion-of INDEX"),
            };
            let mut failed = false;
            let mut rows = Vec::new();
            for (i, c) in &colls {
                let r = verify_cang(&f, c);
                failed |= r.is_err();
                rows.push((
                    *i,
                    c.display(&f.base),
                    r.map(|census| census.counts()).map_err(|e| e.to_string()),
                ));
            }
            let out = if json {
                let list: Vec<Value> = rows
                    .iter()
                    .map(|(i, c, r)| match r {
                        Ok((p, u, s)) => json!({
                            "index": i, "collection": c, "ok": true,
                            "ext_projective": p, "unsupported": u, "sink_fringe": s,
                        }),
                        Err(e) => json!({ "index": i, "collection": c, "ok": false, "error": e }),
                    })
                    .collect();
                Output::json("census", json!({ "results": list }))
            } else {
                Output::plain(
                    rows.iter()
                        .map(|(i, c, r)| match r {
                            Ok((p, u, s)) => {
                                format!("{i}: ok  ext-projective {p}, unsupported {u}, sink fringe {s}  [{c}]")
                            }
                            Err(e) => format!("{i}: FAIL {e}  [{c}]"),
                        })
                        .collect(),
                )
            };
            Ok(out.failing(failed))
        }
        Command::OracleCheck { input, max_len } => {
            let q = load(&input.file)?;
            let rows = check::run(&q, *max_len)?;
            let failed = rows.iter().any(|r| r.failures > 0);
            let out = if json {
                let list: Vec<Value> = rows
                    .iter()
                    .map(|r| json!({ "check": r.name, "cases": r.cases, "failures": r.failures, "first": r.first }))
                    .collect();
                Output::json("oracle-check", json!({ "checks": list, "ok": !failed }))
            } else {
                let mut lines = vec![format!(
                    "{:<8} {:>8} {:>8}  result",
                    "check", "cases", "failed"
                )];
                for r in &rows {
                    let verdict = if r.failures == 0 {
                        "PASS".to_string()
                    } else {
                        format!("FAIL {}", r.first.as_deref().unwrap_or(""))
                    };
                    lines.push(format!(
                        "{:<8} {:>8} {:>8}  {verdict}",
                        r.name, r.cases, r.failures
                    ));
                }
                Output::plain(lines)
            };
            Ok(out.failing(failed))
        }
    }
}
