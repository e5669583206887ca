//! Quantitative estimate probes (stub while the module is assembled).
