#include "relutil/result_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace relutil {

std::string git_blob_sha1(std::string_view content) {
    std::string header = "blob " + std::to_string(content.size());
    header.push_back('\0');

    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int digest_len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr ||
        EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, header.data(), header.size()) != 1 ||
        EVP_DigestUpdate(ctx, content.data(), content.size()) != 1 ||
        EVP_DigestFinal_ex(ctx, digest, &digest_len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("git_blob_sha1: digest failure");
    }
    EVP_MD_CTX_free(ctx);

    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * digest_len);
    for (unsigned int i = 0; i < digest_len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string fmt_double(double v, int significant) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant, v);
    return buf;
}

void write_csv(const ResultTable& t, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_csv: cannot open " + path.string());
    }
    out << "# experiment=" << t.experiment << " seed=" << t.seed
        << " spec_sha1=" << t.spec_hash << " version=" << kToolVersion << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i > 0) {
            out << ',';
        }
        out << t.columns[i];
    }
    out << '\n';
    for (const auto& row : t.rows) {
        if (row.size() != t.columns.size()) {
            throw std::runtime_error("write_csv: row width does not match header");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) {
                out << ',';
            }
            out << row[i];
        }
        out << '\n';
    }
}

void write_jsonl(const std::vector<nlohmann::json>& records,
                 const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_jsonl: cannot open " + path.string());
    }
    for (const auto& r : records) {
        out << r.dump() << '\n';
    }
}

} // namespace relutil
