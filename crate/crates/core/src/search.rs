//! Parameter search (placeholder while the module is built).
