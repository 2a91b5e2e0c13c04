//! Artifact writers. Each produces a `serde_json::Value`; `to_json_string`
//! renders it with sorted keys and a trailing newline.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::cubic::{SolutionMethod, SolutionReport, ThueEquation, UnitCertificate};
use crate::delone::{AxisBox, CoveringWitness, LSolid, LTiling, TilingViolation, ValidationReport};
use crate::geometry::{Point, Sphere};
use crate::lattice::{
    DelaunayClass, FacetBoundReport, LatticeDelaunay, OptimizeOutcome, QuadraticForm, TraceEvent,
    VoronoiCell,
};
use crate::rational::Rational;

use super::{int_value, rat_value};

pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("a Value always serializes");
    s.push('\n');
    s
}

pub fn point_to_value(p: &Point) -> Value {
    rat_vec_value(&p.coords)
}

fn rat_vec_value(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rat_value).collect())
}

fn int_vec_value(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int_value).collect())
}

fn index_vec_value(xs: &[usize]) -> Value {
    Value::Array(xs.iter().map(|&i| Value::from(i as u64)).collect())
}

fn matrix_value(rows: &[Vec<Rational>]) -> Value {
    Value::Array(rows.iter().map(|r| rat_vec_value(r)).collect())
}

fn sphere_value(s: &Sphere) -> Value {
    json!({
        "center": point_to_value(&s.center),
        "radius_squared": rat_value(&s.radius_squared),
        "radius_float": s.radius_float,
    })
}

fn solid_value(s: &LSolid) -> Value {
    json!({
        "vertex_indices": index_vec_value(&s.vertex_indices),
        "sphere": sphere_value(&s.sphere),
    })
}

pub fn tiling_to_value(t: &LTiling) -> Value {
    json!({
        "dim": t.dim as u64,
        "points": Value::Array(t.points.iter().map(point_to_value).collect()),
        "cells": Value::Array(t.cells.iter().map(solid_value).collect()),
        "adjacency": Value::Array(
            t.adjacency
                .iter()
                .map(|f| json!({"facet": index_vec_value(&f.facet), "cells": index_vec_value(&f.cells)}))
                .collect(),
        ),
    })
}

/// A grown sphere carries its full point list so the artifact stands alone.
pub fn grown_solid_to_value(points: &[Point], solid: &LSolid) -> Value {
    json!({
        "dim": points.first().map_or(0, Point::dim) as u64,
        "points": Value::Array(points.iter().map(point_to_value).collect()),
        "solid": solid_value(solid),
    })
}

fn axis_box_value(b: &AxisBox) -> Value {
    json!({"lo": rat_vec_value(&b.lo), "hi": rat_vec_value(&b.hi)})
}

fn witness_value(w: &CoveringWitness) -> Value {
    json!({
        "location": point_to_value(&w.location),
        "distance_squared": rat_value(&w.distance_squared),
    })
}

pub fn validation_to_value(r: &ValidationReport) -> Value {
    json!({
        "dim": r.dim as u64,
        "packing_ok": r.packing_ok,
        "packing_violations": Value::Array(
            r.packing_violations
                .iter()
                .map(|&(i, j)| json!([i as u64, j as u64]))
                .collect(),
        ),
        "covering_ok": r.covering_ok,
        "covering_witnesses": Value::Array(r.covering_witnesses.iter().map(witness_value).collect()),
        "eroded_window": axis_box_value(&r.eroded_window),
    })
}

fn violation_value(v: &TilingViolation) -> Value {
    use TilingViolation::*;
    match v {
        VertexIndexOutOfRange { cell, index } => {
            json!({"type": "vertex_index_out_of_range", "cell": *cell as u64, "index": *index as u64})
        }
        DuplicatePoint { first, second } => {
            json!({"type": "duplicate_point", "first": *first as u64, "second": *second as u64})
        }
        CellNotFullDimensional { cell } => {
            json!({"type": "cell_not_full_dimensional", "cell": *cell as u64})
        }
        VertexOffSphere { cell, point } => {
            json!({"type": "vertex_off_sphere", "cell": *cell as u64, "point": *point as u64})
        }
        PointInsideSphere { cell, point } => {
            json!({"type": "point_inside_sphere", "cell": *cell as u64, "point": *point as u64})
        }
        CocircularPointMissing { cell, point } => {
            json!({"type": "cocircular_point_missing", "cell": *cell as u64, "point": *point as u64})
        }
        FacetSharedByMoreThanTwo { facet } => {
            json!({"type": "facet_shared_by_more_than_two", "facet": index_vec_value(facet)})
        }
        InteriorFacetUnmatched { facet } => {
            json!({"type": "interior_facet_unmatched", "facet": index_vec_value(facet)})
        }
        VolumeMismatch { cells_total, hull } => {
            json!({"type": "volume_mismatch", "cells_total": rat_value(cells_total), "hull": rat_value(hull)})
        }
        DuplicateCell { first, second } => {
            json!({"type": "duplicate_cell", "first": *first as u64, "second": *second as u64})
        }
    }
}

pub fn violations_to_value(vs: &[TilingViolation]) -> Value {
    json!({
        "valid": vs.is_empty(),
        "violations": Value::Array(vs.iter().map(violation_value).collect()),
    })
}

pub fn form_to_value(f: &QuadraticForm) -> Value {
    json!({"gram": matrix_value(f.entries())})
}

fn class_value(c: &DelaunayClass) -> Value {
    json!({
        "vertices": Value::Array(c.vertices.iter().map(|v| int_vec_value(v)).collect()),
        "center": rat_vec_value(&c.center),
        "radius_squared": rat_value(&c.radius_squared),
        "multiplicity": c.multiplicity as u64,
        "volume": rat_value(&c.volume),
    })
}

pub fn delaunay_to_value(d: &LatticeDelaunay) -> Value {
    json!({
        "dim": d.dim as u64,
        "classes": Value::Array(d.classes.iter().map(class_value).collect()),
        "covering_radius_squared": rat_value(&d.covering_radius_squared),
        "covering_radius": d.covering_radius,
        "l_type_signature": d.l_type_signature,
        "star_cell_count": d.star_cell_count as u64,
    })
}

pub fn voronoi_to_value(c: &VoronoiCell) -> Value {
    json!({
        "dim": c.dim as u64,
        "vertices": Value::Array(c.vertices.iter().map(|v| rat_vec_value(v)).collect()),
        "facets": Value::Array(
            c.facets
                .iter()
                .map(|f| json!({"vector": int_vec_value(&f.vector), "vertex_ids": index_vec_value(&f.vertex_ids)}))
                .collect(),
        ),
        "volume": rat_value(&c.volume),
    })
}

pub fn covering_radius_to_value(radius_squared: &Rational, radius_float: f64) -> Value {
    json!({
        "radius_squared": rat_value(radius_squared),
        "radius_float": radius_float,
    })
}

pub fn covering_density_to_value(dim: usize, density: f64) -> Value {
    json!({"dim": dim as u64, "density": density})
}

fn trace_value(t: &TraceEvent) -> Value {
    json!({
        "evaluations": t.evaluations as u64,
        "step": t.step,
        "density": t.density,
        "signature": t.signature,
        "form": form_to_value(&t.form),
    })
}

pub fn optimize_to_value(o: &OptimizeOutcome) -> Value {
    json!({
        "form": form_to_value(&o.form),
        "density": o.density,
        "covering_radius_squared": rat_value(&o.covering_radius_squared),
        "evaluations": o.evaluations as u64,
        "converged": o.converged,
        "budget_exhausted": o.budget_exhausted,
        "trace": Value::Array(o.trace.iter().map(trace_value).collect()),
    })
}

pub fn facet_bound_to_value(r: &FacetBoundReport) -> Value {
    json!({
        "dim": r.dim,
        "index": r.index,
        "bound": r.bound,
        "facet_count": r.facet_count,
        "satisfied": r.satisfied,
    })
}

pub fn equation_to_value(eq: &ThueEquation) -> Value {
    json!({
        "a": int_value(&eq.a),
        "b": int_value(&eq.b),
        "c": int_value(&eq.c),
        "discriminant": int_value(&eq.discriminant),
    })
}

pub fn unit_to_value(u: &UnitCertificate) -> Value {
    json!({
        "element": {
            "a": int_value(&u.element.a),
            "b": int_value(&u.element.b),
            "c": int_value(&u.element.c),
            "q": int_value(&u.element.q),
        },
        "norm": int_value(&u.norm),
        "real_value": u.real_value,
        "is_binomial": u.is_binomial,
    })
}

fn method_str(m: SolutionMethod) -> &'static str {
    match m {
        SolutionMethod::UnitBased => "unit_based",
        SolutionMethod::BoundedSearch => "bounded_search",
    }
}

fn solutions_value(sols: &[(i64, i64)]) -> Value {
    Value::Array(sols.iter().map(|&(x, y)| json!([x, y])).collect())
}

pub fn thue_report_to_value(eq: &ThueEquation, r: &SolutionReport) -> Value {
    json!({
        "equation": equation_to_value(eq),
        "method": method_str(r.method),
        "search_bound": r.search_bound,
        "solutions": solutions_value(&r.solutions),
        "cap_audit": r.cap_audit,
        "unit": r.unit.as_ref().map(unit_to_value),
    })
}

pub fn pell_report_to_value(q: i64, r: &SolutionReport) -> Value {
    json!({
        "q": q,
        "method": method_str(r.method),
        "search_bound": r.search_bound,
        "solutions": solutions_value(&r.solutions),
        "cap_audit": r.cap_audit,
        "unit": r.unit.as_ref().map(unit_to_value),
    })
}
