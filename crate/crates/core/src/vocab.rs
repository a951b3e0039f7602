//! Namespaces and the standard vocabulary reused by the knowledge base.

pub const CLASS_NS: &str = "http://w3id.org/asdkb/ontology/class/";
pub const PROPERTY_NS: &str = "http://w3id.org/asdkb/ontology/property/";
pub const INSTANCE_NS: &str = "http://w3id.org/asdkb/instance/";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
pub const RDFS_COMMENT: &str = "http://www.w3.org/2000/01/rdf-schema#comment";
pub const RDFS_SUBCLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
pub const RDFS_DOMAIN: &str = "http://www.w3.org/2000/01/rdf-schema#domain";
pub const RDFS_RANGE: &str = "http://www.w3.org/2000/01/rdf-schema#range";
pub const OWL_EQUIVALENT_CLASS: &str = "http://www.w3.org/2002/07/owl#equivalentClass";
pub const OWL_CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
pub const OWL_DATATYPE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#DatatypeProperty";
pub const OWL_OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";

pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_FLOAT: &str = "http://www.w3.org/2001/XMLSchema#float";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";

/// Predicates exempt from domain/range validation.
pub const BUILTIN_PREDICATES: &[&str] = &[
    RDF_TYPE,
    RDFS_LABEL,
    RDFS_COMMENT,
    RDFS_SUBCLASS_OF,
    OWL_EQUIVALENT_CLASS,
    RDFS_DOMAIN,
    RDFS_RANGE,
];

pub fn is_builtin(predicate: &str) -> bool {
    BUILTIN_PREDICATES.contains(&predicate)
}

pub fn class_iri(local: &str) -> String {
    format!("{CLASS_NS}{local}")
}

pub fn property_iri(local: &str) -> String {
    format!("{PROPERTY_NS}{local}")
}

pub fn instance_iri(local: &str) -> String {
    format!("{INSTANCE_NS}{local}")
}
