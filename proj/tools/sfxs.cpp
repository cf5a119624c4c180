// sfxs - sign, validate, inspect and publish component bundle archives.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <termios.h>
#include <unistd.h>

#include <CLI11.hpp>

#include "sfxs/archive.hpp"
#include "sfxs/bytes.hpp"
#include "sfxs/manifest.hpp"
#include "sfxs/pki.hpp"
#include "sfxs/repo.hpp"
#include "sfxs/signer.hpp"
#include "sfxs/time.hpp"
#include "sfxs/truststore.hpp"
#include "sfxs/validator.hpp"

namespace {

namespace fs = std::filesystem;
using namespace sfxs;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;
constexpr int kExitEnvironment = 3;

Bytes read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::io_failure, "cannot open " + path.string());
    return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, ByteView data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::io_failure, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) raise(Errc::io_failure, "short write to " + path.string());
}

/// Passwords come from the environment or an echo-suppressed prompt,
/// never from argv.
std::string password_from(const char* env_var, const std::string& prompt) {
    if (const char* value = std::getenv(env_var)) return value;
    std::cerr << prompt << ": " << std::flush;
    std::string line;
    bool tty = ::isatty(STDIN_FILENO) != 0;
    termios saved{};
    if (tty && ::tcgetattr(STDIN_FILENO, &saved) == 0) {
        termios quiet = saved;
        quiet.c_lflag &= ~static_cast<tcflag_t>(ECHO);
        ::tcsetattr(STDIN_FILENO, TCSAFLUSH, &quiet);
        std::getline(std::cin, line);
        ::tcsetattr(STDIN_FILENO, TCSAFLUSH, &saved);
        std::cerr << '\n';
    } else {
        std::getline(std::cin, line);
    }
    return line;
}

std::string store_password() {
    return password_from("SFXS_STORE_PASS", "Store password");
}

std::string key_password(const std::string& alias) {
    return password_from("SFXS_KEY_PASS", "Key password for " + alias);
}

time::UtcSeconds parse_at(const std::string& at) {
    return at.empty() ? time::now() : time::parse_iso8601(at);
}

validate::SignerPolicy parse_policy(const std::string& mode) {
    if (mode == "all-signers") return validate::SignerPolicy::all_signers;
    if (mode == "any-signer") return validate::SignerPolicy::any_signer;
    raise(Errc::invalid_argument, "mode must be all-signers or any-signer");
}

const char* class_name(archive::EntryClass c) {
    switch (c) {
    case archive::EntryClass::manifest: return "manifest";
    case archive::EntryClass::signature_file: return "signature-file";
    case archive::EntryClass::signature_block: return "signature-block";
    case archive::EntryClass::resource: return "resource";
    }
    return "?";
}

int run(int argc, char** argv) {
    CLI::App app{"bundle signing, validation and publication"};
    app.require_subcommand(1);

    std::string store_path, in_path, out_path, alias, dn_text, alg = "rsa", digest = "sha256";
    std::string cert_path, at_text, mode = "all-signers", format = "text", repo_root, pem_alias;
    int bits = 2048, days = 365;
    bool ca = false, trusted = false;

    auto* init = app.add_subcommand("keystore-init", "create an empty key store");
    init->add_option("--store", store_path, "store file path")->required();

    auto* gen = app.add_subcommand("keystore-gen", "generate a key pair and certificate");
    gen->add_option("--store", store_path)->required();
    gen->add_option("--alias", alias)->required();
    gen->add_option("--dn", dn_text, "subject, e.g. \"CN=Pierre, O=INRIA, C=FR\"")->required();
    gen->add_option("--alg", alg, "rsa or dsa")->check(CLI::IsMember({"rsa", "dsa"}));
    gen->add_option("--bits", bits, "RSA modulus size");
    gen->add_option("--days", days, "validity period in days");
    gen->add_flag("--ca", ca, "mark the certificate as a CA");
    std::string issuer;
    gen->add_option("--issuer", issuer, "alias of the issuing key pair");
    std::string not_before;
    gen->add_option("--not-before", not_before, "validity start (YYYY-MM-DDTHH:MM:SSZ)");

    auto* imp = app.add_subcommand("keystore-import", "import a PEM or DER certificate");
    imp->add_option("--store", store_path)->required();
    imp->add_option("--alias", alias)->required();
    imp->add_option("--cert", cert_path, "certificate file")->required();
    imp->add_flag("--trusted", trusted, "mark the certificate as trusted");

    auto* trust = app.add_subcommand("keystore-trust", "mark a stored certificate as trusted");
    trust->add_option("--store", store_path)->required();
    trust->add_option("--alias", alias)->required();

    auto* list = app.add_subcommand("keystore-list", "list store entries");
    list->add_option("--store", store_path)->required();
    list->add_option("--pem", pem_alias, "print this entry's certificate as PEM");

    auto* sign_cmd = app.add_subcommand("sign", "sign a bundle");
    sign_cmd->add_option("--in", in_path)->required();
    sign_cmd->add_option("--out", out_path)->required();
    sign_cmd->add_option("--store", store_path)->required();
    sign_cmd->add_option("--alias", alias)->required();
    sign_cmd->add_option("--digest", digest)->check(CLI::IsMember({"sha1", "sha256"}));

    auto* check_cmd = app.add_subcommand("check", "validate a bundle signature");
    check_cmd->add_option("--in", in_path)->required();
    check_cmd->add_option("--store", store_path)->required();
    check_cmd->add_option("--mode", mode)->check(CLI::IsMember({"all-signers", "any-signer"}));
    check_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    check_cmd->add_option("--at", at_text, "validation time (YYYY-MM-DDTHH:MM:SSZ)");

    auto* inspect = app.add_subcommand("inspect", "show bundle structure");
    inspect->add_option("--in", in_path)->required();
    inspect->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* publish = app.add_subcommand("publish", "validate and publish a bundle");
    publish->add_option("--in", in_path)->required();
    publish->add_option("--store", store_path)->required();
    publish->add_option("--repo", repo_root, "repository root directory")->required();
    publish->add_option("--mode", mode)->check(CLI::IsMember({"all-signers", "any-signer"}));
    publish->add_option("--at", at_text, "validation time (YYYY-MM-DDTHH:MM:SSZ)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    }

    if (init->parsed()) {
        if (fs::exists(store_path)) raise(Errc::io_failure, "store file already exists");
        store::TrustStore s;
        store::save_store(s, store_path, store_password());
        std::cout << "created " << store_path << '\n';
        return kExitOk;
    }

    if (gen->parsed()) {
        std::string pw = store_password();
        store::TrustStore s = store::open_store(store_path, pw);
        store::KeyGenOptions options;
        options.algorithm = alg == "rsa" ? crypto::KeyAlg::rsa : crypto::KeyAlg::dsa;
        options.rsa_bits = bits;
        options.validity_days = days;
        options.ca = ca;
        if (!issuer.empty()) options.issuer_alias = issuer;
        if (!not_before.empty()) options.not_before = time::parse_iso8601(not_before);
        pki::CertificateView cert = store::generate_key_pair(
            s, alias, pki::DistinguishedName::parse(dn_text), options, key_password(alias));
        store::save_store(s, store_path, pw);
        std::cout << "generated " << alias << ": " << cert.subject.to_string() << '\n';
        return kExitOk;
    }

    if (imp->parsed()) {
        std::string pw = store_password();
        store::TrustStore s = store::open_store(store_path, pw);
        Bytes raw = read_file(cert_path);
        std::string text = to_string(view(raw));
        Bytes der_bytes =
            text.find("-----BEGIN") != std::string::npos ? pki::from_pem(text) : raw;
        pki::CertificateView cert =
            pki::parse_certificate(view(der_bytes), pki::ParseOptions{.strict_dn = false});
        store::add_certificate(s, alias, cert, trusted);
        store::save_store(s, store_path, pw);
        std::cout << "imported " << alias << (trusted ? " (trusted)" : "") << '\n';
        return kExitOk;
    }

    if (trust->parsed()) {
        std::string pw = store_password();
        store::TrustStore s = store::open_store(store_path, pw);
        store::mark_trusted(s, alias);
        store::save_store(s, store_path, pw);
        std::cout << "trusted " << alias << '\n';
        return kExitOk;
    }

    if (list->parsed()) {
        store::TrustStore s = store::open_store(store_path, store_password());
        if (!pem_alias.empty()) {
            const store::StoreEntry* entry = s.find(pem_alias);
            if (!entry) raise(Errc::no_such_alias, "no entry named " + pem_alias);
            std::cout << pki::to_pem(view(entry->certificate.raw_der));
            return kExitOk;
        }
        for (const store::StoreEntry& e : s.entries) {
            const char* kind = e.kind == store::EntryKind::trusted_cert     ? "trusted"
                               : e.kind == store::EntryKind::untrusted_cert ? "untrusted"
                                                                            : "key-pair";
            std::cout << e.alias << '\t' << kind << '\t' << e.certificate.subject.to_string()
                      << "\tissuer=" << e.certificate.issuer.to_string() << "\tnot-after="
                      << time::to_iso8601(e.certificate.not_after) << '\n';
        }
        return kExitOk;
    }

    if (sign_cmd->parsed()) {
        if (fs::weakly_canonical(in_path) == fs::weakly_canonical(out_path)) {
            std::cerr << "input and output names must be different\n";
            return kExitUsage;
        }
        store::TrustStore s = store::open_store(store_path, store_password());
        store::SigningIdentity identity = store::get_signing_identity(s, alias, key_password(alias));
        sign::SignRequest request;
        request.input = archive::read(view(read_file(in_path)));
        request.identity = std::move(identity);
        request.digest_alg = digest == "sha1" ? manifest::DigestAlg::sha1 : manifest::DigestAlg::sha256;
        archive::Bundle signed_bundle = sign::sign_bundle(request);
        write_file(out_path, view(archive::write(signed_bundle)));
        std::cout << "signed " << out_path << " as " << archive::detail::upper(alias) << '\n';
        return kExitOk;
    }

    if (check_cmd->parsed()) {
        validate::Options options;
        options.policy = parse_policy(mode);
        validate::Report report =
            validate::check_file(in_path, store_path, store_password(), parse_at(at_text), options);
        if (format == "json")
            std::cout << validate::to_json(report).dump(2) << '\n';
        else
            std::cout << validate::to_text(report);
        return report.valid() ? kExitOk : kExitInvalid;
    }

    if (inspect->parsed()) {
        archive::Bundle bundle = archive::read(view(read_file(in_path)));
        archive::OrderReport order = archive::check_order(bundle);
        if (format == "json") {
            nlohmann::json entries = nlohmann::json::array();
            for (const archive::Entry& e : bundle.entries)
                entries.push_back({{"path", e.path},
                                   {"class", class_name(archive::classify(e.path))},
                                   {"size", e.content.size()}});
            nlohmann::json doc = {{"report_version", 1},
                                  {"entries", std::move(entries)},
                                  {"order_ok", order.ok}};
            std::cout << doc.dump(2) << '\n';
        } else {
            std::cout << "report-version: 1\n";
            for (const archive::Entry& e : bundle.entries)
                std::cout << class_name(archive::classify(e.path)) << '\t' << e.content.size()
                          << '\t' << e.path << '\n';
            std::cout << "order: " << (order.ok ? "ok" : order.detail) << '\n';
        }
        return kExitOk;
    }

    if (publish->parsed()) {
        store::TrustStore s = store::open_store(store_path, store_password());
        repo::PublishOptions options;
        options.policy = parse_policy(mode);
        repo::Index index =
            repo::publish(in_path, repo::Target{repo_root}, s, parse_at(at_text), options);
        std::cout << "published " << fs::path(in_path).filename().string() << " ("
                  << index.entries.size() << " bundles indexed)\n";
        return kExitOk;
    }

    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (e.code() == Errc::validation_failed) return kExitInvalid;
        if (e.code() == Errc::invalid_argument || e.code() == Errc::invalid_alias) return kExitUsage;
        return kExitEnvironment;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitEnvironment;
    }
}
