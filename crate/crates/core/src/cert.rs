//! Certificate assembly (placeholder while the module is built).
