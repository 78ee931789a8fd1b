//! Fringing: completing a gentle quiver so every vertex is 2-in/2-out.

use crate::error::FringeError;
use crate::quiver::{validate_gentle, ArrowId, BoundQuiver, VertexId};

/// The fringed bound quiver with its base. Base vertex and arrow ids are
/// valid ids of `hat` as well.
#[derive(Debug, Clone)]
pub struct FringedAlgebra {
    pub hat: BoundQuiver,
    pub base: BoundQuiver,
    pub fringe_vertices: Vec<VertexId>,
    pub fringe_arrows: Vec<ArrowId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArrowCensus {
    pub hat_arrows: usize,
    pub expected: usize,
}

impl ArrowCensus {
    pub fn holds(&self) -> bool {
        self.hat_arrows == self.expected
    }
}

impl FringedAlgebra {
    pub fn is_fringe_vertex(&self, v: VertexId) -> bool {
        v >= self.base.num_vertices()
    }

    pub fn is_fringe_arrow(&self, a: ArrowId) -> bool {
        a >= self.base.num_arrows()
    }

    /// Fringe vertices with one incoming and no outgoing arrow.
    pub fn sink_fringe_vertices(&self) -> Vec<VertexId> {
        self.fringe_vertices
            .iter()
            .copied()
            .filter(|&v| self.hat.outgoing(v).is_empty())
            .collect()
    }

    pub fn arrow_census(&self) -> ArrowCensus {
        ArrowCensus {
            hat_arrows: self.hat.num_arrows(),
            expected: self.sink_fringe_vertices().len() + 2 * self.base.num_vertices(),
        }
    }
}

pub fn sink_fringe_vertices(f: &FringedAlgebra) -> Vec<VertexId> {
    f.sink_fringe_vertices()
}

pub fn arrow_census(f: &FringedAlgebra) -> ArrowCensus {
    f.arrow_census()
}

pub fn fringe(q: &BoundQuiver) -> Result<FringedAlgebra, FringeError> {
    let report = validate_gentle(q);
    if !report.is_gentle {
        let witness = report
            .violations
            .first()
            .map(|v| format!("{}: {}", v.axiom, v.witness))
            .unwrap_or_default();
        return Err(FringeError::NotGentle(witness));
    }

    let mut hat = q.clone().with_name(&format!("{}.fringed", q.name()));
    let taken = |hat: &BoundQuiver, id: &str| hat.vertex(id).is_some() || hat.arrow(id).is_some();
    let mut fringe_vertices = Vec::new();
    let mut fringe_arrows = Vec::new();
    let mut add = |hat: &mut BoundQuiver, vname: &str, aname: &str, incoming: bool, base: &str| {
        if taken(hat, vname) {
            return Err(FringeError::NameCollision(vname.to_string()));
        }
        if taken(hat, aname) {
            return Err(FringeError::NameCollision(aname.to_string()));
        }
        let v = hat.add_vertex(vname).expect("fresh valid id");
        let a = if incoming {
            hat.add_arrow(aname, vname, base)
        } else {
            hat.add_arrow(aname, base, vname)
        }
        .expect("fresh valid id");
        fringe_vertices.push(v);
        fringe_arrows.push(a);
        Ok(())
    };
    for v in 0..q.num_vertices() {
        let name = q.vertex_name(v).to_string();
        for k in q.incoming(v).len()..2 {
            let i = k - q.incoming(v).len() + 1;
            add(
                &mut hat,
                &format!("{name}.in{i}"),
                &format!("{name}.fi{i}"),
                true,
                &name,
            )?;
        }
        for k in q.outgoing(v).len()..2 {
            let i = k - q.outgoing(v).len() + 1;
            add(
                &mut hat,
                &format!("{name}.out{i}"),
                &format!("{name}.fo{i}"),
                false,
                &name,
            )?;
        }
    }

    let mut new_relations: Vec<(ArrowId, ArrowId)> = Vec::new();
    for v in 0..q.num_vertices() {
        let mut ins = hat.incoming(v).to_vec();
        let mut outs = hat.outgoing(v).to_vec();
        ins.sort_by(|&a, &b| hat.arrow_name(a).cmp(hat.arrow_name(b)));
        outs.sort_by(|&a, &b| hat.arrow_name(a).cmp(hat.arrow_name(b)));
        let base_arrow = |a: ArrowId| a < q.num_arrows();
        let consistent = |matching: [(ArrowId, ArrowId); 2], unmatched: [(ArrowId, ArrowId); 2]| {
            matching
                .iter()
                .all(|&(i, o)| !(base_arrow(i) && base_arrow(o) && q.is_relation(o, i)))
                && unmatched
                    .iter()
                    .all(|&(i, o)| !(base_arrow(i) && base_arrow(o)) || q.is_relation(o, i))
        };
        let identity = [(ins[0], outs[0]), (ins[1], outs[1])];
        let swap = [(ins[0], outs[1]), (ins[1], outs[0])];
        let unmatched = if consistent(identity, swap) {
            swap
        } else if consistent(swap, identity) {
            identity
        } else {
            return Err(FringeError::NotGentle(format!(
                "no matching of arrows at vertex {}",
                q.vertex_name(v)
            )));
        };
        for (i, o) in unmatched {
            if !(base_arrow(i) && base_arrow(o)) {
                new_relations.push((o, i));
            }
        }
    }
    for (g, f) in new_relations {
        let (gn, fn_) = (hat.arrow_name(g).to_string(), hat.arrow_name(f).to_string());
        hat.add_relation(&gn, &fn_)
            .expect("composable fresh relation");
    }
    debug_assert!(validate_gentle(&hat).is_gentle);
    Ok(FringedAlgebra {
        hat,
        base: q.clone(),
        fringe_vertices,
        fringe_arrows,
    })
}
