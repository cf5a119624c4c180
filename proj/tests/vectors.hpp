#pragma once

// Frozen reference values produced by an independent implementation
// (tests/fixtures/make_fixtures.py). Regenerate with that script.

#include <cstddef>
#include <string_view>

namespace vectors {

inline constexpr std::string_view sha1_empty_hex = "da39a3ee5e6b4b0d3255bfef95601890afd80709";
inline constexpr std::string_view sha256_empty_hex = "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855";
inline constexpr std::string_view sha1_empty_b64 = "2jmj7l5rSw0yVb/vlWAYkK/YBwk=";
inline constexpr std::string_view sha256_empty_b64 = "47DEQpj8HBSa+/TImW+5JCeuQeRkm5NMpJWZG3hSuFU=";
inline constexpr std::string_view sha1_abc_hex = "a9993e364706816aba3e25717850c26c9cd0d89d";
inline constexpr std::string_view sha256_abc_hex = "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad";
inline constexpr std::string_view sha1_abc_b64 = "qZk+NkcGgWq6PiVxeFDCbJzQ2J0=";
inline constexpr std::string_view sha256_abc_b64 = "ungWv48Bz+pBQUDeXa4iI7ADYaOWF3qctBD/YfIAFa0=";
inline constexpr std::string_view sha1_hello_hex = "aaf4c61ddcc5e8a2dabede0f3b482cd9aea9434d";
inline constexpr std::string_view sha256_hello_hex = "2cf24dba5fb0a30e26e83b2ac5b9e29e1b161e5c1fa7425e73043362938b9824";
inline constexpr std::string_view sha1_hello_b64 = "qvTGHdzF6KLavt4PO0gs2a6pQ00=";
inline constexpr std::string_view sha256_hello_b64 = "LPJNul+wow4m6DsqxbninhsWHlwfp0JecwQzYpOLmCQ=";
inline constexpr std::string_view hmac_sha256_key_msg_hex = "f7bc83f430538424b13298e6aa6fb143ef4d59a14946175997479dbc2d1a3cd8";
inline constexpr std::string_view pbkdf2_password_salt_4096_32_hex = "c5e478d59288c841aa530db6845c4c8d962893a001ce4e11a4963873aa98134a";

struct OidVector { std::string_view dotted; std::string_view hex; };
inline constexpr OidVector oid_vectors[] = {
    {"1.2.840.113549.1.7.2", "2a864886f70d010702"},
    {"1.2.840.113549.1.7.1", "2a864886f70d010701"},
    {"1.2.840.113549.1.1.1", "2a864886f70d010101"},
    {"1.2.840.113549.1.1.5", "2a864886f70d010105"},
    {"1.2.840.113549.1.1.11", "2a864886f70d01010b"},
    {"1.2.840.10040.4.1", "2a8648ce380401"},
    {"1.2.840.10040.4.3", "2a8648ce380403"},
    {"1.3.14.3.2.26", "2b0e03021a"},
    {"2.16.840.1.101.3.4.2.1", "608648016503040201"},
    {"2.5.4.3", "550403"},
    {"2.5.4.6", "550406"},
    {"2.5.4.7", "550407"},
    {"2.5.4.8", "550408"},
    {"2.5.4.10", "55040a"},
    {"2.5.4.11", "55040b"},
    {"2.5.29.19", "551d13"},
    {"2.5.29.31", "551d1f"},
    {"0.9.2342.19200300.100.1.25", "0992268993f22c640119"},
    {"1.3.6.1.4.1.11129.2.4.2", "2b06010401d679020402"},
    {"2.23.140.1.2.1", "67810c010201"},
    {"1.2.840.10045.4.3.2", "2a8648ce3d040302"},
};

struct DigestVector { std::string_view content_hex; std::string_view sha1_b64; std::string_view sha256_b64; std::string_view sha256_hex; };
inline constexpr DigestVector digest_vectors[] = {
    {"3b96a1c15059b2659224ca", "GXlNdTmg5M4n91IJbC7F9ELH2sU=", "mnvk3DCu1lI66VgNqKt9swMN/BktoI6j3nSG/KDqYrU=", "9a7be4dc30aed6523ae9580da8ab7db3030dfc192da08ea3de7486fca0ea62b5"},
    {"01381fc7f136e7428c41a2375115215738330f1fa159bdb1", "WjUuCVV8ERvEyeScviGN7xyE1dU=", "AH65NXht15vF3PBwfavyT9q/0O7BM1KJfcgkyi2qLrU=", "007eb935786dd79bc5dcf0707dabf24fdabfd0eec13352897dc824ca2daa2eb5"},
    {"c8db9dce93121d20865d7a6ab113a3ccc979d400e8ccb449070d2d1b3b8f0f8bb24164756d", "0WDO4/IFkyv2fX1vZOj9u34snG0=", "nc/vCXV2+4GC303AOKXjznEOtZCqKtnKLlxJujMHmkU=", "9dcfef097576fb8182df4dc038a5e3ce710eb590aa2ad9ca2e5c49ba33079a45"},
    {"8e7e1bd434ee52fe8079529d111225405ac099e12e3faae20d56b0c831f949b9561f04b64d61d2993f582dcec2b305d19d1a", "jjaDY23+ADZBWU0xlv7LzdCbytw=", "HiVW/z3Vlk5Yd8XfMFWMwdbZrzV+BKYtYkEI9bDdK8E=", "1e2556ff3dd5964e5877c5df30558cc1d6d9af357e04a62d624108f5b0dd2bc1"},
    {"542098dbd5cb87dc7a962ad17210a7b5eb065ec274b1a17a13a03374266482e7fafda4f82d0713c3c4a4292b0b285a62308733379e8016221b85b211a07145", "8iZNsOR3KkSIqm9hmMLOaH+WAmc=", "cWW+sFVYUn8BqEilVLiT3KsrCkLdBeZXZhM0vubSl6Q=", "7165beb05558527f01a848a554b893dcab2b0a42dd05e657661334bee6d297a4"},
    {"1bc316e176a7bdba74b20204d20e29297d4d23a3bb2497121ae9b6201bcebc159edb45390dad55ed48f02588549eaef2c3f5f703e1391f99a32e297b50548bf1ede0751f697fe2268dca5ff9", "gJYFQ14kc9UvMwSN2mt0zfQiqAw=", "pX13bxQ/Xa4FAZhC1/hcAmMIEygG8UZYdFrYpKJ81+Y=", "a57d776f143f5dae05019842d7f85c026308132806f14658745ad8a4a27cd7e6"},
    {"e16594e81883f2986ecfda37330cab9e0e93e78401978eab203338cc1139f54342b9e57aed539617cd3d20e59d1302835562bbcf24f228102cd7a1e50036d1f1ded85944ac702488b4ac88f01ffe22e032276e5c4c8829339b", "1ASlqR026fqwz+W3IIxz33UyGJ4=", "Fw084IATnRXG6xQY4OT4WqL10WIjFX/ZT6E8wRodkSU=", "170d3ce080139d15c6eb1418e0e4f85aa2f5d16223157fd94fa13cc11a1d9125"},
    {"a70812eeb960277669ebb26a930b2d129fdaac65470a8543277dbb7806a32f71e69785bccdf9d74152891c42e6885614e8cf7f9b67ac3186b47f1850af1918f2cfd03d68ee6266eada8fb1e79c74a5c186a9224cfe1a09040da6ab10a779f3fab82a522cf393", "NPTflcZGe53OUWTW6/eEjxiu+JA=", "W16hDZkxKbmP46Xeid6RvDgoVBcHsABt3SXin65JYjY=", "5b5ea10d993129b98fe3a5de89de91bc3828541707b0006ddd25e29fae496236"},
    {"6eab8ff55a3c5d5463078a9df409af87302071458d7c7bdc2dc63e24fb0d689f8a7525fdae9e186bd6d5189f30fdaba57a3c4366a9653afd3d288fba5ffb5ef2c0c7218d3053a94d0071dade19eb29a3d92bd73bb1acead57f24f038ac6e739105393bfb5a7346d1d97388b328e963594485e4", "wHkj+0aclhA/mLpWJstBfqEP02k=", "x9LYQxHDsN+C2NlsacNUNVHdD2z22pkKhpKFZ1uRD9M=", "c7d2d84311c3b0df82d8d96c69c3543551dd0f6cf6da990a869285675b910fd3"},
    {"344d0dfbfc1992315d2462d1540731fbc2673626d4ef72743410c1d0f178a2cd2e53c53e8e4459955b2214fc7973ff350da90732ec1e4474c6d106240fdea4f2b1bf05b17345ebaf275403d69661ad842cad8b2a633ecba6f1a23561b163f428524924cbc2521f78587287d5c40b13dfb72a1a855187e1034f3ba5fff13f6766", "G7zAegD4VJwgVE26dTTBYx1YWkc=", "X94uVXpopZ5bPJoR/80G/qyh8g8xHAZnsN9Lil8gYkY=", "5fde2e557a68a59e5b3c9a11ffcd06feaca1f20f311c0667b0df4b8a5f206246"},
    {"faf08b029df5c70f57403a04b505b37053adfb071a62690c3a59437ce6e2dbfbd23166806eea9bbfdf6e105ac2e853c6a016cbfe2fd84deb4e7a7d8ebec1ebf3a2b7e9d6b5362e124d362ccd13d831657f2e3f1916d0ac7763207a89b75874bfa0580d9b2a32f81fd87186f6602dc4642acf50ef87a4ffcbb12431068700ef7805eec968853471ffb7f6176d61", "LIek8K8W90o8FmRDxNKMJxKEzdY=", "hHn9CFVQN8aUrsijtjT3B1498XpTI1q0PXohPr7EmIE=", "8479fd08555037c694aec8a3b634f7075e3df17a53235ab43d7a213ebec49881"},
    {"c19208083ed1fded515c1237150435e4e4f4bfe860d55fa540a3c629dc4d1529770f06c14e90dce964ba0bb70b5da85732838fca72915661d722f4f86ea331f393aecdfaf7287074731955c4904eb446d3b0f408c9638d49d59ebfb2bc4df456ed68f66b9111d1c657708618fd4f74ea9d74865abdc21d93140ebc0d1dc2768a5e3418cc75c41617e7b73669a8d6fe7c6ac6df78a6261e786b6b", "nI8mFmV7aHp9vIGnsSy5AEfUWNo=", "5e8TtydojEWvYLOFFq9zdvr66a64KWnd082l2Tm2iAw=", "e5ef13b727688c45af60b38516af7376fafae9aeb82969ddd3cda5d939b6880c"},
    {"8735860fdfae32cb4b79ea6a7502b759763a84c9a748563d47ec49d5d1b74e581beda6022e351d13e907071454d2fce7c5f05396b54a5fd85fcb6c621e8677f484a6b11f3919b2d69afc7dbc0dc538272632a8f77bf56e1a471c03dac14275ed3a77df3bf9f0a96dd76f853a997124701019bcc4f2df3b5b77f84814b384fe9cb67a672f6553ba2e17795566ef6e791afcbcc7d611a17ef3657672e9ebe3cb5770c583d476da9d", "sCoezcu9p3b+ZmL/MEsBGlEwZt4=", "DDF4+LT/3jquRm/8D5m/aCzhLefMnf3O/TUWcXpvJW8=", "0c3178f8b4ffde3aae466ffc0f99bf682ce12de7cc9dfdcefd3516717a6f256f"},
    {"4dd80415818a67a94595c29dd60039cd078149aaedba4cd64d36cc81c6228886bfcb46440edb5e3d6d5303719d485078585d1762f804684fe874e3cdce68bef4759e95437c0bf539c0dea6b38a3bbc0879b45ce62e874febb99a4803c737f5848787c80b61d08214566e845b3593d5f683bef22f28fc5923d9e1d41b494586ad0fbfb79356e35f46463b74623606f3b98eb3b0347d1bde6e60825e0fed4cc8e8237f3ad3f2fce348a97d4dc0244d6ecab1ca6eee", "QeCS9JXkHEYqIS4IvlcR1UGmkUY=", "6FBSIoF6C01bnycC8R2GwyP+JmV2IMhnEwd4mU1uH88=", "e8505222817a0b4d5b9f2702f11d86c323fe26657620c867130778994d6e1fcf"},
    {"137a821c22669d873fb19ad136febb4298c80e8b332d436e54804e2dbc8cc1b463a9e785ef81a067f29fffcee6bda409eacadb2e3abd71c5701c5a377d4b04f566957967befc379be7c1cfaa07b240eacc3611d5e01930bc2b188d2bcc2c761bd597b1dac8af5bbbd56d837dd1b5857cf663289a5d1977eb3ccb6023df070ebf680506f64673035e76fd925f7c9e6e5820a99993e9963ee95b8d4a34f0b4c479d739f0d26e1e281d81c775674045f0160260dbd8bc667e4f3fb6c379350c91e1d9", "Uaq0kuQFF7B/5ieXQkR448zo478=", "I1l4glgFOR4ejK8XjLV/UmAH7cUIjYFQkF3GE6IHBkY=", "235978825805391e1e8caf178cb57f526007edc5088d8150905dc613a2070646"},
    {"da1dff22c343d26539ce720497fc3eb6290ed36c7aa03a065ac9d1d9b1f7fbe2078787c7cf27e19176ecfb2b3032f99a7d379ffa7d767a3cf9c5d1a12d2e4bf5578d5d8c00ed79fe0da3f8a18528c3cb1fb8c5c493ab118d9d96d254d121f6b222a69aaa308f3462556c829f6ed7360269085e04933795b39fb5eb2a75c895d1c04b55593602a876a6beb15bc335e8f7b29f82f155109f645599365af21dc00a8af3a7d2ea406df358129d0e5c3d726253f648c3b130c65919bac91e1e150f15d716a84b25401d8fc3df5df012e5", "dZdNHdQH4FPtl6yJin4Oqpomh7U=", "muNMxvgi9zG1m91Ui/PZyFJU89wK144QRvN4lhB9Too=", "9ae34cc6f822f731b59bdd548bf3d9c85254f3dc0ad78e1046f37896107d4e8a"},
    {"a0bf7d29651f074333ea4a37f7fbc02bbb55984dc013309f60135485a7613410ab652708afcd22bbfb38f68879a74d2a0fa462c6c03084b3826e480bdd1091f5488541b043dfbc6033862199029f47ac733979b4463df25e0f14177cd61677496fb6837a986e0c09d46b81c00af9e688dcac946fc954b37b019e77310b8a1de31991a4bd27924c8ed680d0570acd629644956b4fc18bffdf50a42280f485bd9b3dad5ed16762b3c82f5dc4b57935f3aea38bb5ada7fb0e63f3becec3081f8d49d4a3670ed0f7788dd9991633d047d1a8f0282ce0f2bb18e0e28334", "K+AsqY0VYW+Bn9A6XbhNLVbn4Eg=", "uces1uATAKRlVNE986fgkb9SYdRewVVKMHnB+WCdziQ=", "b9c7acd6e01300a46554d13df3a7e091bf5261d45ec1554a3079c1f9609dce24"},
    {"6662fb2f06fb3d202d07226a58f9429f4c9b5c2e06852737675cd7319ccc6e3e4f43c7498f7263e58085f2e5c21da1bba211269103e98d290a16c0758cf3d7f6397c25d585d0fec25a684a907f15cb8dc6bb2ea3f8d0d33081925ca5dc0bf7e0bcc56c4a004de5b0546a80e2a61b970e4f51cad9fe71d14364880338a24ca5f572d6f3201721f0a60542ee545065dd35d78b53ae2d055f5a4aaf0ea6f6edb92cf16715d0e384f89d07a8ec5d952c75faf42122979cc5566ecdc1d368f1280b7ed23027d27baed48cef53d0758da937563ecb8e0e64e78c768275acf5ab3474e2ace9829cf9d75b6b", "HEJjO3YHVCxKoFZ0btOgCR1FFHY=", "mb+RlbF47pVE45l24pN1aaMSLQRC34itPbp3Va9PCPc=", "99bf9195b178ee9544e39976e2937569a3122d0442df88ad3dba7755af4f08f7"},
    {"2d057936a7d872fe2723fa9db8f7c414dde2210e4df81ed06da659dd9136a76cf321688b6f18a40f04d1ee420b92f54c357eea5d46a296a093bf37df3cd51ef62a7409f9c7c24125804b7387fc8c4f6e193de292ab62b401f310a1cde10077770ad5551a672dbe57d3698004433d4793c2f60044348eef0bc7718f3f380d2d07cb1c438407b195be35040d5097fd57d369813c0c9980bfd545bbfaccf856b5bda421cbd05fa63d72def21304b224f74644b78f82918f9d78a6c5d90cdb328ab2cfbde69527652f8a050d8ab84a0b9d038c6ef03dd613010c2267249997f921fd83c78c6c1744e21fe42c68031908c423798058d61f", "3fCMX5ZZACXwHuzJ0TCLrlGFf20=", "NWHId0Oha64emy5R5Op2BsX7bY152FhsVRPIan86EVU=", "3561c87743a16bae1e9b2e51e4ea7606c5fb6d8d79d8586c5513c86a7f3a1155"},
    {"f3a7f63c48b4a7dc213fd2d019f546886e28e6ef936b146874efdc8a87a1e19a97ff08cc4fbee639891deaa054074adcc7ebae29895c9f171b68ae4aecb864f71b6ced1e0ab38387a72d9b7f7902d24f6cbf96815df494d2658ee5f6e6f5f80e57e43deacf0c97fe53687f26df5ff819369b36af69ab0dd2295b1b46cecfb418236292e7f74139d665c52c4dde94d272fb78256a04fa205040c6e6f1fabeb24e58dc82cfdbc88347b53d3babce1c7892954dfc6c8759e58280c8deb1c43b08e6cd4aa658d21b8a891cc743fa086d04b1da12536b483f75a1c3589c3d83becf1959a4953c34b269d3705bddf1e2ff8c06a4c0c121a124e8e5df6fb84d90be1e1fd7e3", "GQNnQe/tf87BHvrzsqLIquWCLaM=", "enPdSqbLDjjPvAO855AkSPKtZV5F7MLGqvNb0U9ixOo=", "7a73dd4aa6cb0e38cfbc03bce7902448f2ad655e45ecc2c6aaf35bd14f62c4ea"},
};

inline constexpr std::string_view wrapped_manifest_hex = "4d616e69666573742d56657273696f6e3a20312e300d0a0d0a4e616d653a206f72672f6578616d706c652f616161616161616161616161616161616161616161616161616161616161616161616161616161616161616161616161616161610d0a20616161616161616161616161616161616161616161616161616161612e636c6173730d0a534841312d4469676573743a207676767676767676767676767676767676767676767676767676767676767676767676767676767676767676767676767676767676767676760d0a20767676767676767676767676767676767676767676767676767676767676767676767676767676767676760d0a0d0a4e616d653a20622e62696e0d0a4b65793a2078787878787878787878787878787878787878787878787878787878787878787878787878787878787878787878787878787878787878787878787878787878780d0a0d0a";

inline constexpr std::string_view leaf_rsa_n = "d490369553622a63f07f1b6db5cf356bfdf896628655b820d4953db4cea9f0f1d777021dcf20d34e894a2a757ef5d2cb6d70a130c82a18bb75372ff93049fd5e9bb0b6c17bc49644c9bc60940889299a6e2459c763e8519726da944200bb36aa1d51b10a567f9e466e48a48ae23091498a9b80e2ada70c290503ebef5010cee327b578b632035cfbc93a066128ba0b91f72ab463917f26e6af7c87678d99e355c2f1b4bac4bf54dbce77767dc239328ab5846ae9706de23ca048c9fe3a0ec545b731c5309e6a6c1d3b68e2349c232815e6912c7829ad54ed8480ca22b7807692b952de8a5cb079bd50d6e7a443444d285028b4dc0ca0fa8dcdd60238fded9a6f";
inline constexpr std::string_view leaf_rsa_e = "010001";
inline constexpr std::string_view leaf_rsa_d = "1cb658312680c1921b57c808334148898c564a5607a8478563c1bf028fd1e3c27f24cbabe4211e79e2d09a58a1ac29eba19e4f9fabc207f2365c9c85cff086a1836d44da70d1f6ac5705b393fb6d2fa9f50bc2f6cc7782a1e4b52cc6979bb2401b52c013d1e84e245c5c42a1a1f9067f0512893fd54e15b5eac0035c21980ba1e357c89e22ca293e70ff191b0a3139fc0a0a14554be03db5834f977b0be6703fae0992b0e6bb320285f8fcdaf70280b24d7d12fe9a856e5b4a9cdc2693b6e69d5821330233c9ff68b8d8fa3a985291372a4997d3df86ff46d4b5fc6deddb1378f0d4db7bf5fa248cccc0201bad5b30c2fd40d14fa6d4773a5474b00346d3a90d";
inline constexpr std::string_view leaf_sig_sha256_hello_world = "8165c47504148a1851e1cf633153d82f4b11ac04a5d2920ecfb182ea007f7e86550bc1b7179da761ac4fce69b47a74551a76a9e556e9360aeba6af2ed7147e935276fca425d3b7efe5fd4753453c0cf9b55280758c4c9672688e3099c60767bc7fabb9e6f7fe180f2a6d3d079c7c3bf30e2329b1508fb904806819893d6f72cb9bbfaedc7ed6a92922e5af193a13b0b2de11c5fcfb2d12e89e8b93390921b350e3dd5b4bd624a182139d2ed43944d1f62807617f26f80ea5d0fb423bdaf471fea174e7533a03dfad369bfa6dbc6f97930728941bcd6e3582f0f7ee7024db320517fa52f9118f14c2759bb06d301762088a77eec62bb91c558a8aa7700945ded8";
inline constexpr std::string_view descriptor_content_hex = "64657363726970746f7220656e74727920636f6e74656e742c20636f6d70726573736564207769746820726177206465666c617465";

} // namespace vectors
