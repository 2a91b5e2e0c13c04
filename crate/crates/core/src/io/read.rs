//! Readers: input parsers plus an exact inverse for every writer in
//! `write`. Shadow floats and other derived fields are recomputed from the
//! exact data rather than read back.

use num_bigint::BigInt;
use serde_json::Value;

use crate::cubic::{
    PureCubicInteger, SolutionMethod, SolutionReport, ThueEquation, UnitCertificate,
};
use crate::delone::{
    AxisBox, CoveringWitness, FacetShare, LSolid, LTiling, TilingViolation, ValidationReport,
};
use crate::geometry::{Point, Sphere};
use crate::lattice::{
    DelaunayClass, FacetBoundReport, LatticeDelaunay, OptimizeOutcome, QuadraticForm, TraceEvent,
    VoronoiCell, VoronoiFacet,
};
use crate::rational::{to_f64, Rational};

use super::{
    field, schema, value_array, value_bool, value_f64, value_i64, value_int, value_rat, value_str,
    value_u64, value_usize, IoError,
};

fn rat_vec(v: &Value, what: &str) -> Result<Vec<Rational>, IoError> {
    value_array(v, what)?
        .iter()
        .enumerate()
        .map(|(i, x)| value_rat(x, &format!("{what}[{i}]")))
        .collect()
}

fn int_vec(v: &Value, what: &str) -> Result<Vec<BigInt>, IoError> {
    value_array(v, what)?
        .iter()
        .enumerate()
        .map(|(i, x)| value_int(x, &format!("{what}[{i}]")))
        .collect()
}

fn index_vec(v: &Value, what: &str) -> Result<Vec<usize>, IoError> {
    value_array(v, what)?
        .iter()
        .enumerate()
        .map(|(i, x)| value_usize(x, &format!("{what}[{i}]")))
        .collect()
}

fn matrix(v: &Value, what: &str) -> Result<Vec<Vec<Rational>>, IoError> {
    value_array(v, what)?
        .iter()
        .enumerate()
        .map(|(i, row)| rat_vec(row, &format!("{what}[{i}]")))
        .collect()
}

/// Point-set input: an array of coordinate arrays. Coordinates may be
/// strings ("3/2", "0.25") or bare numbers; both parse exactly.
pub fn points_from_value(v: &Value) -> Result<Vec<Point>, IoError> {
    value_array(v, "points")?
        .iter()
        .enumerate()
        .map(|(i, p)| Ok(Point::new(rat_vec(p, &format!("points[{i}]"))?)))
        .collect()
}

/// Lattice input: `{"gram": rows}`, `{"basis": rows}`, or a bare matrix
/// taken as the Gram matrix.
pub fn form_from_value(v: &Value) -> Result<QuadraticForm, IoError> {
    let built = match v.as_object() {
        Some(obj) => {
            if let Some(g) = obj.get("gram") {
                QuadraticForm::new(matrix(g, "gram")?)
            } else if let Some(b) = obj.get("basis") {
                QuadraticForm::gram_from_basis(&matrix(b, "basis")?)
            } else {
                return Err(schema("lattice input needs a `gram` or `basis` field"));
            }
        }
        None => QuadraticForm::new(matrix(v, "gram")?),
    };
    built.map_err(|e| schema(format!("invalid lattice input: {e}")))
}

fn sphere_from_value(v: &Value) -> Result<Sphere, IoError> {
    let center = Point::new(rat_vec(field(v, "center")?, "center")?);
    let radius_squared = value_rat(field(v, "radius_squared")?, "radius_squared")?;
    Ok(Sphere::new(center, radius_squared))
}

fn solid_from_value(v: &Value) -> Result<LSolid, IoError> {
    Ok(LSolid {
        vertex_indices: index_vec(field(v, "vertex_indices")?, "vertex_indices")?,
        sphere: sphere_from_value(field(v, "sphere")?)?,
    })
}

pub fn tiling_from_value(v: &Value) -> Result<LTiling, IoError> {
    let cells = value_array(field(v, "cells")?, "cells")?
        .iter()
        .map(solid_from_value)
        .collect::<Result<Vec<_>, IoError>>()?;
    let adjacency = value_array(field(v, "adjacency")?, "adjacency")?
        .iter()
        .map(|f| {
            Ok(FacetShare {
                facet: index_vec(field(f, "facet")?, "facet")?,
                cells: index_vec(field(f, "cells")?, "cells")?,
            })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(LTiling {
        dim: value_usize(field(v, "dim")?, "dim")?,
        points: points_from_value(field(v, "points")?)?,
        cells,
        adjacency,
    })
}

pub fn grown_solid_from_value(v: &Value) -> Result<(Vec<Point>, LSolid), IoError> {
    let points = points_from_value(field(v, "points")?)?;
    let solid = solid_from_value(field(v, "solid")?)?;
    Ok((points, solid))
}

fn axis_box_from_value(v: &Value) -> Result<AxisBox, IoError> {
    Ok(AxisBox {
        lo: rat_vec(field(v, "lo")?, "lo")?,
        hi: rat_vec(field(v, "hi")?, "hi")?,
    })
}

pub fn validation_from_value(v: &Value) -> Result<ValidationReport, IoError> {
    let packing_violations = value_array(field(v, "packing_violations")?, "packing_violations")?
        .iter()
        .map(|pair| {
            let pair = value_array(pair, "packing violation")?;
            if pair.len() != 2 {
                return Err(schema("packing violation: expected an index pair"));
            }
            Ok((
                value_usize(&pair[0], "packing violation")?,
                value_usize(&pair[1], "packing violation")?,
            ))
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    let covering_witnesses = value_array(field(v, "covering_witnesses")?, "covering_witnesses")?
        .iter()
        .map(|w| {
            Ok(CoveringWitness {
                location: Point::new(rat_vec(field(w, "location")?, "location")?),
                distance_squared: value_rat(field(w, "distance_squared")?, "distance_squared")?,
            })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(ValidationReport {
        dim: value_usize(field(v, "dim")?, "dim")?,
        packing_ok: value_bool(field(v, "packing_ok")?, "packing_ok")?,
        packing_violations,
        covering_ok: value_bool(field(v, "covering_ok")?, "covering_ok")?,
        covering_witnesses,
        eroded_window: axis_box_from_value(field(v, "eroded_window")?)?,
    })
}

fn violation_from_value(v: &Value) -> Result<TilingViolation, IoError> {
    use TilingViolation::*;
    let cell = |v: &Value| value_usize(field(v, "cell")?, "cell");
    let point = |v: &Value| value_usize(field(v, "point")?, "point");
    let pair = |v: &Value| -> Result<(usize, usize), IoError> {
        Ok((
            value_usize(field(v, "first")?, "first")?,
            value_usize(field(v, "second")?, "second")?,
        ))
    };
    Ok(match value_str(field(v, "type")?, "type")? {
        "vertex_index_out_of_range" => VertexIndexOutOfRange {
            cell: cell(v)?,
            index: value_usize(field(v, "index")?, "index")?,
        },
        "duplicate_point" => {
            let (first, second) = pair(v)?;
            DuplicatePoint { first, second }
        }
        "cell_not_full_dimensional" => CellNotFullDimensional { cell: cell(v)? },
        "vertex_off_sphere" => VertexOffSphere {
            cell: cell(v)?,
            point: point(v)?,
        },
        "point_inside_sphere" => PointInsideSphere {
            cell: cell(v)?,
            point: point(v)?,
        },
        "cocircular_point_missing" => CocircularPointMissing {
            cell: cell(v)?,
            point: point(v)?,
        },
        "facet_shared_by_more_than_two" => FacetSharedByMoreThanTwo {
            facet: index_vec(field(v, "facet")?, "facet")?,
        },
        "interior_facet_unmatched" => InteriorFacetUnmatched {
            facet: index_vec(field(v, "facet")?, "facet")?,
        },
        "volume_mismatch" => VolumeMismatch {
            cells_total: value_rat(field(v, "cells_total")?, "cells_total")?,
            hull: value_rat(field(v, "hull")?, "hull")?,
        },
        "duplicate_cell" => {
            let (first, second) = pair(v)?;
            DuplicateCell { first, second }
        }
        other => return Err(schema(format!("unknown violation type `{other}`"))),
    })
}

pub fn violations_from_value(v: &Value) -> Result<Vec<TilingViolation>, IoError> {
    value_array(field(v, "violations")?, "violations")?
        .iter()
        .map(violation_from_value)
        .collect()
}

pub fn delaunay_from_value(v: &Value) -> Result<LatticeDelaunay, IoError> {
    let classes = value_array(field(v, "classes")?, "classes")?
        .iter()
        .map(|c| {
            let vertices = value_array(field(c, "vertices")?, "vertices")?
                .iter()
                .enumerate()
                .map(|(i, row)| int_vec(row, &format!("vertices[{i}]")))
                .collect::<Result<Vec<_>, IoError>>()?;
            Ok(DelaunayClass {
                vertices,
                center: rat_vec(field(c, "center")?, "center")?,
                radius_squared: value_rat(field(c, "radius_squared")?, "radius_squared")?,
                multiplicity: value_usize(field(c, "multiplicity")?, "multiplicity")?,
                volume: value_rat(field(c, "volume")?, "volume")?,
            })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    let covering_radius_squared =
        value_rat(field(v, "covering_radius_squared")?, "covering_radius_squared")?;
    let covering_radius = to_f64(&covering_radius_squared).sqrt();
    Ok(LatticeDelaunay {
        dim: value_usize(field(v, "dim")?, "dim")?,
        classes,
        covering_radius_squared,
        covering_radius,
        l_type_signature: value_str(field(v, "l_type_signature")?, "l_type_signature")?.to_owned(),
        star_cell_count: value_usize(field(v, "star_cell_count")?, "star_cell_count")?,
    })
}

pub fn voronoi_from_value(v: &Value) -> Result<VoronoiCell, IoError> {
    let vertices = value_array(field(v, "vertices")?, "vertices")?
        .iter()
        .enumerate()
        .map(|(i, row)| rat_vec(row, &format!("vertices[{i}]")))
        .collect::<Result<Vec<_>, IoError>>()?;
    let facets = value_array(field(v, "facets")?, "facets")?
        .iter()
        .map(|f| {
            Ok(VoronoiFacet {
                vector: int_vec(field(f, "vector")?, "vector")?,
                vertex_ids: index_vec(field(f, "vertex_ids")?, "vertex_ids")?,
            })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(VoronoiCell {
        dim: value_usize(field(v, "dim")?, "dim")?,
        vertices,
        facets,
        volume: value_rat(field(v, "volume")?, "volume")?,
    })
}

pub fn covering_radius_from_value(v: &Value) -> Result<(Rational, f64), IoError> {
    let radius_squared = value_rat(field(v, "radius_squared")?, "radius_squared")?;
    let radius_float = to_f64(&radius_squared).sqrt();
    Ok((radius_squared, radius_float))
}

pub fn covering_density_from_value(v: &Value) -> Result<(usize, f64), IoError> {
    Ok((
        value_usize(field(v, "dim")?, "dim")?,
        value_f64(field(v, "density")?, "density")?,
    ))
}

pub fn optimize_from_value(v: &Value) -> Result<OptimizeOutcome, IoError> {
    let trace = value_array(field(v, "trace")?, "trace")?
        .iter()
        .map(|t| {
            Ok(TraceEvent {
                evaluations: value_usize(field(t, "evaluations")?, "evaluations")?,
                step: value_f64(field(t, "step")?, "step")?,
                density: value_f64(field(t, "density")?, "density")?,
                signature: value_str(field(t, "signature")?, "signature")?.to_owned(),
                form: form_from_value(field(t, "form")?)?,
            })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(OptimizeOutcome {
        form: form_from_value(field(v, "form")?)?,
        density: value_f64(field(v, "density")?, "density")?,
        covering_radius_squared: value_rat(
            field(v, "covering_radius_squared")?,
            "covering_radius_squared",
        )?,
        evaluations: value_usize(field(v, "evaluations")?, "evaluations")?,
        trace,
        converged: value_bool(field(v, "converged")?, "converged")?,
        budget_exhausted: value_bool(field(v, "budget_exhausted")?, "budget_exhausted")?,
    })
}

pub fn facet_bound_from_value(v: &Value) -> Result<FacetBoundReport, IoError> {
    let fc = field(v, "facet_count")?;
    let facet_count = if fc.is_null() {
        None
    } else {
        Some(value_u64(fc, "facet_count")?)
    };
    let sat = field(v, "satisfied")?;
    let satisfied = if sat.is_null() {
        None
    } else {
        Some(value_bool(sat, "satisfied")?)
    };
    Ok(FacetBoundReport {
        dim: value_u64(field(v, "dim")?, "dim")? as u32,
        index: value_u64(field(v, "index")?, "index")?,
        bound: value_u64(field(v, "bound")?, "bound")?,
        facet_count,
        satisfied,
    })
}

/// Accepts `{"a":…,"b":…,"c":…}` with an optional `discriminant`, which is
/// checked against the recomputed value when present.
pub fn equation_from_value(v: &Value) -> Result<ThueEquation, IoError> {
    let a = value_int(field(v, "a")?, "a")?;
    let b = value_int(field(v, "b")?, "b")?;
    let c = value_int(field(v, "c")?, "c")?;
    let eq = ThueEquation::new(a, b, c);
    if let Some(claimed) = v.as_object().and_then(|o| o.get("discriminant")) {
        let claimed = value_int(claimed, "discriminant")?;
        if claimed != eq.discriminant {
            return Err(schema(format!(
                "stored discriminant {claimed} does not match recomputed {}",
                eq.discriminant
            )));
        }
    }
    Ok(eq)
}

pub fn unit_from_value(v: &Value) -> Result<UnitCertificate, IoError> {
    let el = field(v, "element")?;
    let element = PureCubicInteger::new(
        value_int(field(el, "a")?, "element.a")?,
        value_int(field(el, "b")?, "element.b")?,
        value_int(field(el, "c")?, "element.c")?,
        value_int(field(el, "q")?, "element.q")?,
    )
    .map_err(|e| schema(format!("invalid unit element: {e}")))?;
    let norm = value_int(field(v, "norm")?, "norm")?;
    let real_value = element.real_value();
    let is_binomial = element.is_binomial();
    Ok(UnitCertificate {
        element,
        norm,
        real_value,
        is_binomial,
    })
}

fn report_from_value(v: &Value) -> Result<SolutionReport, IoError> {
    let method = match value_str(field(v, "method")?, "method")? {
        "unit_based" => SolutionMethod::UnitBased,
        "bounded_search" => SolutionMethod::BoundedSearch,
        other => return Err(schema(format!("unknown method `{other}`"))),
    };
    let solutions = value_array(field(v, "solutions")?, "solutions")?
        .iter()
        .map(|pair| {
            let pair = value_array(pair, "solution")?;
            if pair.len() != 2 {
                return Err(schema("solution: expected an [x, y] pair"));
            }
            Ok((value_i64(&pair[0], "x")?, value_i64(&pair[1], "y")?))
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    let unit_v = field(v, "unit")?;
    let unit = if unit_v.is_null() {
        None
    } else {
        Some(unit_from_value(unit_v)?)
    };
    Ok(SolutionReport {
        solutions,
        search_bound: value_i64(field(v, "search_bound")?, "search_bound")?,
        method,
        cap_audit: value_bool(field(v, "cap_audit")?, "cap_audit")?,
        unit,
    })
}

pub fn thue_report_from_value(v: &Value) -> Result<(ThueEquation, SolutionReport), IoError> {
    Ok((
        equation_from_value(field(v, "equation")?)?,
        report_from_value(v)?,
    ))
}

pub fn pell_report_from_value(v: &Value) -> Result<(i64, SolutionReport), IoError> {
    Ok((value_i64(field(v, "q")?, "q")?, report_from_value(v)?))
}
