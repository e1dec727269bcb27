int cwe401_bug_alias_unfreed_m_main(int c) {
  char *p = malloc(16);
  char *q = p;
  q[0] = 1;
  return 0;
}
