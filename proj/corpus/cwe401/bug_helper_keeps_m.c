void cwe401_bug_helper_keeps_m_fill(char *b) {
  b[0] = 1;
}

int cwe401_bug_helper_keeps_m_main(int c) {
  char *p = malloc(16);
  cwe401_bug_helper_keeps_m_fill(p);
  return 0;
}
