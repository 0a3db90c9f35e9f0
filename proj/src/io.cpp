#include "fhlab/io.hpp"

#include <unistd.h>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

#include "fhlab/error.hpp"

namespace fhlab::io {

std::string fmt(double v) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string fmt(std::complex<double> v) { return fmt(v.real()) + "," + fmt(v.imag()); }

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("io", "atomic_write", "cannot open temporary file",
                        {{"path", tmp.string()}});
        out << content;
        if (!out.flush())
            throw Error("io", "atomic_write", "write failed", {{"path", tmp.string()}});
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error("io", "atomic_write", "rename failed: " + ec.message(),
                    {{"path", path}});
    }
}

}  // namespace fhlab::io
