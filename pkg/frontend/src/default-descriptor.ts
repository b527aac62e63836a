// Generated by tests/gen_corpus.py from `trailpack schema export`.
// Do not edit by hand; regenerate with the corpus.
export const DEFAULT_DESCRIPTOR_JSON = "{\n  \"version\": \"1\",\n  \"rules\": [\n    {\n      \"scope\": \"collection\",\n      \"name\": \"name\",\n      \"kind\": \"text\",\n      \"required\": true\n    },\n    {\n      \"scope\": \"collection\",\n      \"name\": \"version\",\n      \"kind\": \"text\",\n      \"required\": true\n    },\n    {\n      \"scope\": \"collection\",\n      \"name\": \"language\",\n      \"kind\": \"text\",\n      \"required\": false\n    },\n    {\n      \"scope\": \"collection\",\n      \"name\": \"description\",\n      \"kind\": \"text\",\n      \"required\": false\n    },\n    {\n      \"scope\": \"collection\",\n      \"name\": \"schema\",\n      \"kind\": \"url\",\n      \"required\": false\n    },\n    {\n      \"scope\": \"poi\",\n      \"name\": \"type\",\n      \"kind\": \"enum\",\n      \"required\": true,\n      \"values\": [\n        \"POI\"\n      ]\n    },\n    {\n      \"scope\": \"poi\",\n      \"name\": \"id\",\n      \"kind\": \"text\",\n      \"required\": true\n    },\n    {\n      \"scope\": \"poi\",\n      \"name\": \"title\",\n      \"kind\": \"text\",\n      \"required\": true\n    },\n    {\n      \"scope\": \"poi\",\n      \"name\": \"description\",\n      \"kind\": \"text\",\n      \"required\": true,\n      \"word_budget\": 300\n    },\n    {\n      \"scope\": \"poi\",\n      \"name\": \"image\",\n      \"kind\": \"url\",\n      \"required\": true\n    },\n    {\n      \"scope\": \"track\",\n      \"name\": \"type\",\n      \"kind\": \"enum\",\n      \"required\": true,\n      \"values\": [\n        \"track\"\n      ]\n    },\n    {\n      \"scope\": \"track\",\n      \"name\": \"title\",\n      \"kind\": \"text\",\n      \"required\": false\n    }\n  ]\n}\n";
