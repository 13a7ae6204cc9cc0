#pragma once

// Fortran LAPACK entry points used by the elliptic and induction solves.
extern "C" {
void dptsv_(const int* n, const int* nrhs, double* d, double* e, double* b, const int* ldb, int* info);
void dgbsv_(const int* n, const int* kl, const int* ku, const int* nrhs, double* ab, const int* ldab, int* ipiv,
            double* b, const int* ldb, int* info);
}
