void cwe401_ok_handed_out_m_give(char **out) {
  char *p = malloc(16);
  *out = p;
}

int cwe401_ok_handed_out_m_main(int c) {
  return 0;
}
