void cwe401_ok_freed_by_helper_m_release(char *b) {
  free(b);
}

int cwe401_ok_freed_by_helper_m_main(int c) {
  char *p = malloc(16);
  cwe401_ok_freed_by_helper_m_release(p);
  return 0;
}
