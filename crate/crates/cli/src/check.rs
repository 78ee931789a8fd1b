use anyhow::{anyhow, Result};
use gentle_core::oracle::{
    ext1_dim_linear, hom_dim_linear, rep_of_string, surjection_exists, tau_linear, PathAlgebra,
    Representation,
};
use gentle_core::*;
use rayon::prelude::*;

/// Default length bound on algebras with bands.
const BAND_LEN: usize = 3;

pub struct Row {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first: Option<String>,
}

fn tally(name: &'static str, results: Vec<Result<(), String>>) -> Row {
    let cases = results.len();
    let failures = results.iter().filter(|r| r.is_err()).count();
    let first = results.into_iter().find_map(|r| r.err());
    Row {
        name,
        cases,
        failures,
        first,
    }
}

/// Hom, tau, kiss, Ext and Fac cross-checks for strings up to `max_len`.
pub fn run(q: &BoundQuiver, max_len: Option<usize>) -> Result<Vec<Row>> {
    let f = fringe(q).map_err(|e| anyhow!("fringe: {e}"))?;
    let finite = detect_bands(q).is_empty();
    let bound = if finite {
        max_len
    } else {
        Some(max_len.unwrap_or(BAND_LEN))
    };
    let strings = enumerate_strings(q, bound).map_err(|e| anyhow!("strings: {e}"))?;
    let alg = PathAlgebra::new(q);
    let reps: Vec<Representation> = strings
        .par_iter()
        .map(|w| rep_of_string(q, w).rep)
        .collect();
    let taus: Vec<Representation> = reps.par_iter().map(|m| tau_linear(q, &alg, m)).collect();
    let pairs: Vec<(usize, usize)> = (0..strings.len())
        .flat_map(|i| (0..strings.len()).map(move |j| (i, j)))
        .collect();
    let show = |i: usize| strings[i].display(q);

    let hom = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (c, l) = (
                hom_dim(q, &strings[i], &strings[j]),
                hom_dim_linear(q, &reps[i], &reps[j]),
            );
            if c == l {
                Ok(())
            } else {
                Err(format!("Hom({}, {}) {c} vs {l}", show(i), show(j)))
            }
        })
        .collect();
    let tau_rows = (0..strings.len())
        .map(|i| {
            let comb = match tau(q, &strings[i]) {
                TauResult::Zero => vec![0; q.num_vertices()],
                TauResult::Module(t) => dimension_vector(q, &t),
            };
            if comb == taus[i].dims {
                Ok(())
            } else {
                Err(format!("tau {}", show(i)))
            }
        })
        .collect();
    let kiss = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (c, l) = (
                hom_tau_dim(&f, &strings[i], &strings[j]),
                hom_dim_linear(q, &reps[i], &taus[j]),
            );
            if c == l {
                Ok(())
            } else {
                Err(format!("Hom({}, tau {}) {c} vs {l}", show(i), show(j)))
            }
        })
        .collect();
    let ext = pairs
        .par_iter()
        .map(|&(j, i)| {
            let l = ext1_dim_linear(q, &alg, &reps[j], &reps[i]);
            let basis = ext_basis(q, &strings[j], &strings[i]);
            let c = ext_dim(&f, &strings[j], &strings[i]);
            if c == l && basis.len() == l && basis.iter().all(|s| s.is_additive(q)) {
                Ok(())
            } else {
                Err(format!(
                    "Ext({}, {}) {c}/{} vs {l}",
                    show(j),
                    show(i),
                    basis.len()
                ))
            }
        })
        .collect();
    let mut rows = vec![
        tally("hom", hom),
        tally("tau", tau_rows),
        tally("kiss", kiss),
        tally("ext", ext),
    ];

    if finite {
        let colls = maximal_collections(&f).map_err(|e| anyhow!("tau_tilting: {e}"))?;
        let targets: Vec<usize> = (0..strings.len())
            .filter(|&i| strings[i].len() <= 3)
            .collect();
        let fac = colls
            .par_iter()
            .flat_map_iter(|c| {
                let gens = c.modules();
                let gen_reps: Vec<Representation> =
                    gens.iter().map(|w| rep_of_string(q, w).rep).collect();
                let refs: Vec<&Representation> = gen_reps.iter().collect();
                targets
                    .iter()
                    .map(|&i| {
                        let (comb, lin) = (
                            fac_contains(q, &gens, &strings[i]),
                            surjection_exists(q, &refs, &reps[i]),
                        );
                        if comb == lin {
                            Ok(())
                        } else {
                            Err(format!("{} in Fac({})", show(i), c.display(q)))
                        }
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        rows.push(tally("fac", fac));
    }
    Ok(rows)
}
