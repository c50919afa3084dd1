#include "dilate_lab.h"

#include <cmath>
#include <new>
#include <string>

#include "arith.hpp"
#include "runner.hpp"

struct dl_report {
    int status = DL_OK;
    std::string payload;
    std::string error;
};

extern "C" {

int dl_run_json(const char* request_json, dl_report** out) {
    if (out == nullptr) return DL_ERR_USAGE;
    *out = nullptr;
    auto* report = new (std::nothrow) dl_report;
    if (report == nullptr) return DL_ERR_USAGE;
    if (request_json == nullptr) {
        report->status = DL_ERR_USAGE;
        report->error = "E2: null request";
        *out = report;
        return report->status;
    }
    const dilate::RunResult result = dilate::run_request_json(request_json);
    report->status = static_cast<int>(result.status);
    report->payload = result.payload;
    report->error = result.error;
    *out = report;
    return report->status;
}

int dl_report_status(const dl_report* report) { return report ? report->status : DL_ERR_USAGE; }

const char* dl_report_payload(const dl_report* report) {
    return report ? report->payload.c_str() : "";
}

const char* dl_report_error(const dl_report* report) {
    return report ? report->error.c_str() : "null report";
}

void dl_report_free(dl_report* report) { delete report; }

const char* dl_version(void) { return dilate::kVersion; }

int dl_gcd_reduce(uint64_t m, uint64_t n, uint64_t* d, uint64_t* m_prime, uint64_t* n_prime) {
    if (d == nullptr || m_prime == nullptr || n_prime == nullptr) return DL_ERR_USAGE;
    try {
        const dilate::GcdReduction r = dilate::gcd_reduce(m, n);
        *d = r.d;
        *m_prime = r.m_prime;
        *n_prime = r.n_prime;
        return DL_OK;
    } catch (const dilate::Error& e) {
        return static_cast<int>(e.status());
    }
}

int dl_sigma(double s, uint64_t n, double* value) {
    if (value == nullptr) return DL_ERR_USAGE;
    try {
        double total = 0.0;
        for (uint64_t d : dilate::divisors(n)) total += std::pow(static_cast<double>(d), s);
        *value = total;
        return DL_OK;
    } catch (const dilate::Error& e) {
        return static_cast<int>(e.status());
    }
}

int dl_mean_sigma_minus1(uint64_t J, double* value) {
    if (value == nullptr) return DL_ERR_USAGE;
    try {
        *value = dilate::mean_sigma_minus1(J);
        return DL_OK;
    } catch (const dilate::Error& e) {
        return static_cast<int>(e.status());
    }
}

}  // extern "C"
